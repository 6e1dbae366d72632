#include "pdv/bench/benchmark.hpp"

#include <fstream>
#include <random>

#include "pdv/automata/dfa_io.hpp"
#include "pdv/automata/operations.hpp"
#include "pdv/bench/dataset.hpp"
#include "pdv/errors.hpp"
#include "pdv/oracle/rnn_model.hpp"
#include "pdv/sampling/word_distribution.hpp"

namespace pdv {

namespace {

constexpr const char* manifest_format = "pdv-manifest v1";

Word random_word(std::size_t min_len, std::size_t max_len, std::size_t letters, std::mt19937_64& rng) {
    std::size_t len = std::uniform_int_distribution<std::size_t>(min_len, max_len)(rng);
    std::uniform_int_distribution<Letter> letter(0, static_cast<Letter>(letters - 1));
    Word w(len);
    for (auto& a : w) a = letter(rng);
    return w;
}

std::vector<LabeledSequence> labeled_sample(const Dfa& dfa, WordSampler& sampler, std::size_t count) {
    std::vector<LabeledSequence> rows;
    rows.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Word w = sampler();
        LabeledSequence row{dfa.accepts(w), {}};
        row.tokens.reserve(w.size());
        for (Letter a : w) row.tokens.push_back(dfa.alphabet().symbol(a));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string instance_name(std::size_t index, std::size_t count) {
    std::string digits = std::to_string(index);
    std::size_t width = std::max<std::size_t>(3, std::to_string(count == 0 ? 0 : count - 1).size());
    return "inst" + std::string(width - std::min(width, digits.size()), '0') + digits;
}

nlohmann::json options_json(const BenchOptions& o) {
    nlohmann::json j{
        {"count", o.count},
        {"n_max", o.n_max},
        {"alphabet_size", o.alphabet_size},
        {"specs_per_dfa", o.specs_per_dfa},
        {"train_size", o.train_size},
        {"test_size", o.test_size},
        {"stop_prob", o.stop_prob},
        {"derivation", o.derivation == SpecDerivation::literal ? "literal" : "random_subsets"},
        {"loop_fault", nullptr},
    };
    if (o.loop_fault) {
        const auto& f = *o.loop_fault;
        j["loop_fault"] = {{"prefix", {f.prefix_min, f.prefix_max}},
                           {"loop", {f.loop_min, f.loop_max}},
                           {"suffix", {f.suffix_min, f.suffix_max}}};
    }
    return j;
}

} // namespace

const char* to_string(OracleKind kind) {
    switch (kind) {
        case OracleKind::dfa: return "dfa";
        case OracleKind::xor_fault: return "xor";
        case OracleKind::rnn: return "rnn";
    }
    return "unknown";
}

OracleKind parse_oracle_kind(std::string_view name) {
    if (name == "dfa") return OracleKind::dfa;
    if (name == "xor") return OracleKind::xor_fault;
    if (name == "rnn") return OracleKind::rnn;
    throw input_error("unknown oracle kind '" + std::string(name) + "' (expected dfa, xor or rnn)");
}

nlohmann::json to_json(const Manifest& manifest) {
    auto instances = nlohmann::json::array();
    for (const auto& e : manifest.instances) {
        nlohmann::json oracle{{"kind", to_string(e.oracle)}};
        if (e.oracle != OracleKind::dfa) oracle["file"] = e.oracle_file;
        instances.push_back({
            {"id", e.id},
            {"alphabet", e.alphabet},
            {"states", e.num_states},
            {"ground", e.ground},
            {"oracle", std::move(oracle)},
            {"specs", e.specs},
            {"train", e.train},
            {"test", e.test},
        });
    }
    return {{"format", manifest_format},
            {"seed", manifest.seed},
            {"params", manifest.params},
            {"instances", std::move(instances)}};
}

Manifest manifest_from_json(const nlohmann::json& j, std::filesystem::path base_dir) {
    try {
        if (j.at("format").get<std::string>() != manifest_format) {
            throw input_error("unsupported manifest format '" + j.at("format").get<std::string>() + "'");
        }
        Manifest m;
        m.base_dir = std::move(base_dir);
        m.seed = j.at("seed").get<std::uint64_t>();
        m.params = j.value("params", nlohmann::json::object());
        for (const auto& item : j.at("instances")) {
            InstanceEntry e;
            e.id = item.at("id").get<std::string>();
            e.alphabet = item.at("alphabet").get<std::vector<std::string>>();
            e.num_states = item.value("states", std::size_t{0});
            e.ground = item.at("ground").get<std::string>();
            const auto& oracle = item.at("oracle");
            e.oracle = parse_oracle_kind(oracle.at("kind").get<std::string>());
            if (e.oracle != OracleKind::dfa) e.oracle_file = oracle.at("file").get<std::string>();
            e.specs = item.at("specs").get<std::vector<std::string>>();
            e.train = item.value("train", std::string{});
            e.test = item.value("test", std::string{});
            m.instances.push_back(std::move(e));
        }
        return m;
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("malformed manifest: ") + e.what());
    }
}

void save_manifest(const Manifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw input_error("cannot write manifest " + path.string());
    }
    out << to_json(manifest).dump(2) << '\n';
    if (!out) {
        throw input_error("write failed for " + path.string());
    }
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw input_error("cannot open manifest " + path.string());
    }
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(path.string() + ": " + e.what());
    }
    return manifest_from_json(j, path.parent_path());
}

Dfa random_loop_fault(const Dfa& ground, const Dfa& spec, const LoopFaultOptions& options, std::uint64_t seed,
                      std::size_t max_attempts) {
    if (options.loop_min == 0 || options.prefix_min > options.prefix_max || options.loop_min > options.loop_max ||
        options.suffix_min > options.suffix_max) {
        throw input_error("invalid loop fault length ranges");
    }
    std::mt19937_64 rng(seed);
    const std::size_t k = ground.num_letters();
    for (std::size_t attempt = 0; attempt < max_attempts; ++attempt) {
        Word w1 = random_word(options.prefix_min, options.prefix_max, k, rng);
        Word loop = random_word(options.loop_min, options.loop_max, k, rng);
        Word w2 = random_word(options.suffix_min, options.suffix_max, k, rng);
        Dfa fault = minimize(product(loop_language_dfa(ground.alphabet(), w1, loop, w2), ground, combine::first_only));
        if (!check_inclusion(fault, spec).holds()) {
            return fault;
        }
    }
    throw input_error("no loop fault escaping the specification in " + std::to_string(max_attempts) + " draws");
}

Manifest gen_benchmark(const BenchOptions& options, const std::filesystem::path& out_dir) {
    if (options.count == 0 || options.n_max == 0 || options.alphabet_size == 0 || options.specs_per_dfa == 0) {
        throw input_error("benchmark parameters must be positive");
    }
    const Alphabet alphabet = Alphabet::of_size(options.alphabet_size);
    const auto dist = WordDistribution::uniform(options.alphabet_size, options.stop_prob);

    Manifest manifest;
    manifest.seed = options.seed;
    manifest.params = options_json(options);
    manifest.base_dir = out_dir;
    std::filesystem::create_directories(out_dir);

    for (std::size_t i = 0; i < options.count; ++i) {
        const std::uint64_t instance_seed = split_seed(options.seed, i);
        std::optional<Dfa> ground;
        std::vector<Dfa> specs;
        std::optional<Dfa> fault;
        std::uint64_t seed = 0;
        for (std::size_t attempt = 0; attempt < options.max_rerolls && !ground; ++attempt) {
            seed = split_seed(instance_seed, attempt);
            Dfa candidate = random_dfa(options.n_max, alphabet, split_seed(seed, 0));
            specs = derive_specs(candidate, options.specs_per_dfa, split_seed(seed, 1), options.derivation);
            if (specs.empty()) continue;
            if (options.loop_fault) {
                try {
                    fault = random_loop_fault(candidate, specs.front(), *options.loop_fault, split_seed(seed, 2), 100);
                } catch (const input_error&) {
                    continue;
                }
            }
            ground = std::move(candidate);
        }
        if (!ground) {
            throw input_error("instance " + std::to_string(i) + " not generated after " +
                              std::to_string(options.max_rerolls) + " re-rolls");
        }
        for (const Dfa& spec : specs) {
            if (!check_inclusion(*ground, spec).holds()) {
                throw contract_error("derived specification does not contain the ground language");
            }
        }

        InstanceEntry entry;
        entry.id = instance_name(i, options.count);
        entry.alphabet = alphabet.symbols();
        entry.num_states = ground->num_states();
        const std::filesystem::path dir = out_dir / entry.id;
        std::filesystem::create_directories(dir);

        entry.ground = entry.id + "/ground.dfa";
        save_dfa(*ground, out_dir / entry.ground);
        for (std::size_t s = 0; s < specs.size(); ++s) {
            entry.specs.push_back(entry.id + "/spec_" + std::to_string(s) + ".dfa");
            save_dfa(specs[s], out_dir / entry.specs.back());
        }
        if (fault) {
            entry.oracle = OracleKind::xor_fault;
            entry.oracle_file = entry.id + "/fault.dfa";
            save_dfa(*fault, out_dir / entry.oracle_file);
        }

        WordSampler sampler(dist, split_seed(seed, 3));
        entry.train = entry.id + "/train.tsv";
        save_dataset(labeled_sample(*ground, sampler, options.train_size), out_dir / entry.train);
        entry.test = entry.id + "/test.tsv";
        save_dataset(labeled_sample(*ground, sampler, options.test_size), out_dir / entry.test);

        manifest.instances.push_back(std::move(entry));
    }
    save_manifest(manifest, out_dir / "manifest.json");
    return manifest;
}

std::unique_ptr<LanguageOracle> make_oracle(const Manifest& manifest, const InstanceEntry& entry) {
    std::unique_ptr<LanguageOracle> oracle;
    switch (entry.oracle) {
        case OracleKind::dfa:
            oracle = std::make_unique<DfaOracle>(load_dfa(manifest.resolve(entry.ground)));
            break;
        case OracleKind::xor_fault:
            oracle = std::make_unique<FaultInjectedOracle>(load_dfa(manifest.resolve(entry.ground)),
                                                           load_dfa(manifest.resolve(entry.oracle_file)));
            break;
        case OracleKind::rnn:
            oracle = std::make_unique<RnnOracle>(load_rnn_model(manifest.resolve(entry.oracle_file)));
            break;
    }
    if (oracle->alphabet().symbols() != entry.alphabet) {
        throw input_error("oracle for " + entry.id + " does not use the manifest alphabet");
    }
    return oracle;
}

} // namespace pdv
