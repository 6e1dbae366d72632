#include "pdv/verify/run_record.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include "pdv/errors.hpp"

namespace pdv {

namespace {

RunRecord base_record(std::string instance_id, std::string spec_id, Method method, const VerifyConfig& config) {
    RunRecord r;
    r.instance_id = std::move(instance_id);
    r.spec_id = std::move(spec_id);
    r.algorithm = to_string(method);
    r.seed = config.seed;
    r.epsilon = config.epsilon;
    r.gamma = config.gamma;
    r.smc_bound = config.smc_bound == SmcBound::paper ? "paper" : "hoeffding";
    r.fixed_sample_count = config.fixed_sample_count;
    return r;
}

template <typename T>
void put_optional(nlohmann::json& j, const char* key, const std::optional<T>& value) {
    if (value) {
        j[key] = *value;
    } else {
        j[key] = nullptr;
    }
}

template <typename T>
std::optional<T> get_optional(const nlohmann::json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end() || it->is_null()) return std::nullopt;
    return it->get<T>();
}

} // namespace

RunRecord make_run_record(std::string instance_id, std::string spec_id, Method method, const VerifyConfig& config,
                          const WordDistribution& dist, const Verdict& verdict, const Alphabet& alphabet) {
    RunRecord r = base_record(std::move(instance_id), std::move(spec_id), method, config);
    r.stop_prob = dist.stop_prob();
    r.outcome = to_string(verdict.outcome);
    r.reason = verdict.reason;
    r.confirmed = verdict.confirmed;
    if (verdict.counterexample) {
        std::vector<std::string> letters;
        letters.reserve(verdict.counterexample->size());
        for (Letter a : *verdict.counterexample) letters.push_back(alphabet.symbol(a));
        r.counterexample = std::move(letters);
    }
    r.stats = verdict.stats;
    if (verdict.hypothesis) r.final_dfa_size = verdict.hypothesis->num_states();
    return r;
}

RunRecord make_error_record(std::string instance_id, std::string spec_id, Method method, const VerifyConfig& config,
                            std::string message) {
    RunRecord r = base_record(std::move(instance_id), std::move(spec_id), method, config);
    r.outcome = "error";
    r.reason = std::move(message);
    return r;
}

nlohmann::json to_json(const RunRecord& record) {
    const RunStats& s = record.stats;
    nlohmann::json stats{
        {"wall_seconds", s.wall_seconds},
        {"membership_queries", s.membership_queries},
        {"eq_rounds", s.eq_rounds},
        {"hypothesis_sizes", s.hypothesis_sizes},
        {"sampled_words", s.sampled_words},
        {"truncated_samples", s.truncated_samples},
        {"spurious_counterexamples", s.spurious_counterexamples},
    };
    put_optional(stats, "counterexample_length", s.counterexample_length);

    nlohmann::json j{
        {"instance", record.instance_id},
        {"spec", record.spec_id},
        {"algorithm", record.algorithm},
        {"seed", record.seed},
        {"params",
         {{"epsilon", record.epsilon},
          {"gamma", record.gamma},
          {"smc_bound", record.smc_bound},
          {"fixed_sample_count", record.fixed_sample_count},
          {"stop_prob", record.stop_prob}}},
        {"outcome", record.outcome},
        {"reason", record.reason},
        {"confirmed", record.confirmed},
        {"stats", std::move(stats)},
    };
    put_optional(j, "counterexample", record.counterexample);
    put_optional(j, "final_dfa_size", record.final_dfa_size);
    if (record.faulty_flow) j["faulty_flow"] = *record.faulty_flow;
    return j;
}

RunRecord record_from_json(const nlohmann::json& j) {
    try {
        RunRecord r;
        r.instance_id = j.at("instance").get<std::string>();
        r.spec_id = j.at("spec").get<std::string>();
        r.algorithm = j.at("algorithm").get<std::string>();
        r.seed = j.at("seed").get<std::uint64_t>();
        const auto& p = j.at("params");
        r.epsilon = p.at("epsilon").get<double>();
        r.gamma = p.at("gamma").get<double>();
        r.smc_bound = p.at("smc_bound").get<std::string>();
        r.fixed_sample_count = p.at("fixed_sample_count").get<bool>();
        r.stop_prob = p.at("stop_prob").get<double>();
        r.outcome = j.at("outcome").get<std::string>();
        r.reason = j.at("reason").get<std::string>();
        r.confirmed = j.at("confirmed").get<bool>();
        r.counterexample = get_optional<std::vector<std::string>>(j, "counterexample");
        r.final_dfa_size = get_optional<std::size_t>(j, "final_dfa_size");
        if (auto it = j.find("faulty_flow"); it != j.end() && !it->is_null()) r.faulty_flow = *it;

        const auto& s = j.at("stats");
        r.stats.wall_seconds = s.at("wall_seconds").get<double>();
        r.stats.membership_queries = s.at("membership_queries").get<std::uint64_t>();
        r.stats.eq_rounds = s.at("eq_rounds").get<std::uint64_t>();
        r.stats.hypothesis_sizes = s.at("hypothesis_sizes").get<std::vector<std::size_t>>();
        r.stats.sampled_words = s.at("sampled_words").get<std::uint64_t>();
        r.stats.truncated_samples = s.at("truncated_samples").get<std::uint64_t>();
        r.stats.spurious_counterexamples = s.at("spurious_counterexamples").get<std::uint64_t>();
        r.stats.counterexample_length = get_optional<std::size_t>(s, "counterexample_length");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("malformed run record: ") + e.what());
    }
}

void append_record(const std::filesystem::path& path, const RunRecord& record) {
    std::string line = to_json(record).dump() + '\n';
    int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
    if (fd < 0) {
        throw input_error("cannot open results file " + path.string() + ": " + std::strerror(errno));
    }
    const char* data = line.data();
    std::size_t left = line.size();
    while (left > 0) {
        ssize_t n = ::write(fd, data, left);
        if (n < 0) {
            if (errno == EINTR) continue;
            int err = errno;
            ::close(fd);
            throw input_error("write failed for " + path.string() + ": " + std::strerror(err));
        }
        data += n;
        left -= static_cast<std::size_t>(n);
    }
    if (::fsync(fd) != 0) {
        int err = errno;
        ::close(fd);
        throw input_error("fsync failed for " + path.string() + ": " + std::strerror(err));
    }
    ::close(fd);
}

std::vector<RunRecord> parse_records(std::string_view text) {
    std::vector<RunRecord> records;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            records.push_back(record_from_json(nlohmann::json::parse(line)));
        } catch (const nlohmann::json::exception& e) {
            throw input_error("line " + std::to_string(line_no) + ": " + e.what());
        } catch (const input_error& e) {
            throw input_error("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return records;
}

std::vector<RunRecord> read_records(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot open results file " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_records(buf.str());
    } catch (const input_error& e) {
        throw input_error(path.string() + ": " + e.what());
    }
}

} // namespace pdv
