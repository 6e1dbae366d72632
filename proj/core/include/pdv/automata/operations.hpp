#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "pdv/automata/dfa.hpp"

namespace pdv {

/// Boolean combination of two acceptance bits used by product().
using AcceptCombiner = std::function<bool(bool, bool)>;

namespace combine {
inline bool both(bool x, bool y) { return x && y; }
inline bool either(bool x, bool y) { return x || y; }
inline bool first_only(bool x, bool y) { return x && !y; }
inline bool exclusive(bool x, bool y) { return x != y; }
} // namespace combine

/// Product automaton together with the component state of every product state.
struct ProductDfa {
    Dfa dfa;
    std::vector<std::pair<StateId, StateId>> pairs;
};

Dfa complement(const Dfa& dfa);

/// Reachable-pair product. Product states are numbered in breadth-first
/// discovery order with letters visited in canonical order.
ProductDfa product_with_pairs(const Dfa& first, const Dfa& second, const AcceptCombiner& combiner);
Dfa product(const Dfa& first, const Dfa& second, const AcceptCombiner& combiner);

/// Shortest accepted word, lexicographically smallest among the shortest.
/// Empty optional means the language is empty.
std::optional<Word> shortest_accepted(const Dfa& dfa);

/// Outcome of L(first) ⊆ L(second).
struct InclusionResult {
    std::optional<Word> counterexample;
    bool holds() const noexcept { return !counterexample.has_value(); }
};

/// Decides L(first) ⊆ L(second); on failure returns the shortest,
/// lexicographically smallest word in L(first) \ L(second).
InclusionResult check_inclusion(const Dfa& first, const Dfa& second);

bool language_equal(const Dfa& first, const Dfa& second);

/// Drops states not reachable from the initial state. Surviving states keep
/// their relative order.
Dfa trim(const Dfa& dfa);

/// Minimal equivalent DFA. States are renumbered canonically (breadth-first
/// from the initial state, letters in order), so two language-equal inputs
/// yield identical outputs.
Dfa minimize(const Dfa& dfa);

/// Canonical breadth-first renumbering of the reachable part.
Dfa canonicalize(const Dfa& dfa);

/// States reachable from the initial state.
std::vector<bool> reachable_states(const Dfa& dfa);

} // namespace pdv
