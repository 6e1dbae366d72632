#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdv/sampling/word_distribution.hpp"
#include "pdv/verify/verdict.hpp"
#include "pdv/verify/verify.hpp"

namespace pdv {

/// One line of a results file.
struct RunRecord {
    std::string instance_id;
    std::string spec_id;
    std::string algorithm;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    double gamma = 0.0;
    std::string smc_bound = "paper";
    bool fixed_sample_count = false;
    double stop_prob = WordDistribution::default_stop_prob;
    /// "counterexample", "satisfied", "budget_exhausted" or "error".
    std::string outcome;
    std::string reason;
    bool confirmed = false;
    std::optional<std::vector<std::string>> counterexample;
    RunStats stats;
    std::optional<std::size_t> final_dfa_size;
    std::optional<nlohmann::json> faulty_flow;

    bool is_mistake() const noexcept { return outcome == "counterexample"; }
};

RunRecord make_run_record(std::string instance_id, std::string spec_id, Method method, const VerifyConfig& config,
                          const WordDistribution& dist, const Verdict& verdict, const Alphabet& alphabet);

/// Record for a run that threw before producing a verdict.
RunRecord make_error_record(std::string instance_id, std::string spec_id, Method method, const VerifyConfig& config,
                            std::string message);

nlohmann::json to_json(const RunRecord& record);
/// Throws input_error on missing or mistyped fields.
RunRecord record_from_json(const nlohmann::json& j);

/// Appends one NDJSON line and flushes it to disk before returning.
void append_record(const std::filesystem::path& path, const RunRecord& record);

/// Reads an NDJSON results file; blank lines are skipped. Errors carry the
/// line number.
std::vector<RunRecord> read_records(const std::filesystem::path& path);
std::vector<RunRecord> parse_records(std::string_view text);

} // namespace pdv
