#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pdv/automata/dfa.hpp"

namespace pdv {

enum class Outcome { counterexample_found, property_satisfied, budget_exhausted };

const char* to_string(Outcome outcome);

struct RunStats {
    double wall_seconds = 0.0;
    std::uint64_t membership_queries = 0;
    std::uint64_t eq_rounds = 0;
    /// Hypothesis state count per round, in order.
    std::vector<std::size_t> hypothesis_sizes;
    std::uint64_t sampled_words = 0;
    std::uint64_t truncated_samples = 0;
    std::optional<std::size_t> counterexample_length;
    std::uint64_t spurious_counterexamples = 0;
};

/// Result of one verification run.
///
/// A counterexample is only ever reported after it was re-checked against
/// the oracle (accepted) and the specification (rejected).
struct Verdict {
    Outcome outcome = Outcome::budget_exhausted;
    std::optional<Word> counterexample;
    bool confirmed = false;
    double epsilon = 0.0;
    double gamma = 0.0;
    /// Why the run stopped without a verdict; empty otherwise.
    std::string reason;
    RunStats stats;
    /// Last hypothesis (PDV) or extracted automaton (AAMC).
    std::optional<Dfa> hypothesis;
    /// AAMC witness that the oracle did not confirm.
    std::optional<Word> spurious_witness;

    bool found_counterexample() const noexcept { return outcome == Outcome::counterexample_found; }
};

} // namespace pdv
