#pragma once

#include <cstdint>
#include <vector>

#include "pdv/automata/dfa.hpp"

namespace pdv {

/// Random DFA for synthetic benchmarks: state count uniform in [1, max_states],
/// uniform successors, each state accepting with probability 1/2, then trimmed
/// to the reachable part. Deterministic in the seed.
Dfa random_dfa(std::size_t max_states, const Alphabet& alphabet, std::uint64_t seed);

enum class SpecDerivation {
    /// F_i drawn as random nonempty subsets of Q \ F.
    random_subsets,
    /// F_i = Q \ F verbatim; yields at most one (universal) specification.
    literal,
};

/// Specification automata (Q, δ, q0, F ∪ F_i) that contain L(dfa) by
/// construction. Returns at most `count` distinct specs, and none when every
/// state already accepts.
std::vector<Dfa> derive_specs(const Dfa& dfa, std::size_t count, std::uint64_t seed,
                              SpecDerivation mode = SpecDerivation::random_subsets);

/// Minimal DFA for w1 · loop⁺ · w2. Throws input_error when loop is empty.
Dfa loop_language_dfa(const Alphabet& alphabet, const Word& w1, const Word& loop, const Word& w2);

} // namespace pdv
