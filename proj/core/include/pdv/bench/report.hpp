#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pdv/verify/run_record.hpp"

namespace pdv {

/// Per-algorithm aggregates over a results file. Runs with outcome "error"
/// are counted but excluded from every mean.
struct AlgorithmSummary {
    std::string algorithm;
    std::size_t runs = 0;
    std::size_t errors = 0;
    std::optional<double> avg_time;
    /// Mean counterexample length over runs that found one.
    std::optional<double> avg_len;
    std::size_t mistakes = 0;
    std::optional<double> avg_mqs;
    /// Mean final hypothesis or extracted automaton size.
    std::optional<double> avg_dfa_size;
    std::size_t flows_checked = 0;
    std::size_t flows_found = 0;
};

/// Rows ordered smc, aamc, pdv, then any other algorithm by name.
std::vector<AlgorithmSummary> summarize(const std::vector<RunRecord>& records);

/// Aligned text table with columns
/// Type | Avg time (s) | Avg len | # Mistakes | Avg MQs | Avg DFA size,
/// followed by faulty-flow counts when any were checked.
std::string format_table(const std::vector<AlgorithmSummary>& rows);
std::string format_csv(const std::vector<AlgorithmSummary>& rows);

} // namespace pdv
