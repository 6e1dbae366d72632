#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json.hpp>

#include "pdv/automata/dfa.hpp"
#include "pdv/oracle/language_oracle.hpp"

namespace pdv {

/// Loops through state `at` of length at most `max_len`, as letter words.
///
/// A loop leaves `at` and returns to it only on its last letter; other
/// states may repeat. Results are ordered by length, then lexicographically,
/// and cut off after `max_loops` entries.
std::vector<Word> find_loops(const Dfa& dfa, StateId at, std::size_t max_len, std::size_t max_loops = 64);

struct FlowOptions {
    std::size_t pump_max = 100;
    std::size_t threshold = 20;
    std::size_t max_loop_len = 12;
    std::size_t max_loops_per_state = 64;
    /// Keep scanning after the first flow and list every flow found.
    bool exhaustive = false;
};

/// One pumped decomposition w = w1 · w2 with loop ℓ at the product state of w1.
struct Flow {
    std::size_t split = 0;
    Word loop;
    std::size_t hits = 0;
};

struct FaultyFlowReport {
    Word w;
    Word w1;
    Word loop;
    Word w2;
    /// Pump counts n in [1, pump_max] for which w1·ℓⁿ·w2 was a counterexample.
    std::size_t hits = 0;
    std::size_t pump_max = 0;
    std::size_t threshold = 0;
    bool found = false;
    /// Highest hit count over all tested candidates.
    std::size_t best_hits = 0;
    std::size_t candidates_tested = 0;
    std::uint64_t membership_queries = 0;
    /// Every flow above threshold, in scan order (exhaustive mode only).
    std::vector<Flow> flows;
};

/// Generalizes a confirmed counterexample w into a faulty flow by pumping
/// loops of spec × hyp. Splits are scanned shortest prefix first, loops in
/// find_loops order; a pumped word counts as a hit when the spec rejects it
/// and the oracle accepts it. Throws contract_error when w itself is not a
/// counterexample and input_error on alphabet mismatch.
FaultyFlowReport detect_faulty_flow(LanguageOracle& oracle, const Dfa& spec, const Dfa& hyp, const Word& w,
                                    const FlowOptions& options = {});

nlohmann::json to_json(const FaultyFlowReport& report, const Alphabet& alphabet);

} // namespace pdv
