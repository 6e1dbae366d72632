#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pdv/automata/alphabet.hpp"

namespace pdv {

using StateId = std::uint32_t;

/// Complete deterministic finite automaton over an Alphabet.
///
/// The transition table is dense and total: one successor for every
/// (state, letter) pair, stored row-major by state. Instances are immutable
/// once constructed; every operation returns a fresh automaton.
class Dfa {
public:
    /// Validates totality and bounds; throws input_error on violation.
    Dfa(Alphabet alphabet, std::size_t num_states, StateId initial, std::vector<bool> accepting,
        std::vector<StateId> transitions);

    /// One state looping on every letter; accepts everything or nothing.
    static Dfa universal(Alphabet alphabet);
    static Dfa empty(Alphabet alphabet);

    const Alphabet& alphabet() const noexcept { return alphabet_; }
    std::size_t num_states() const noexcept { return accepting_.size(); }
    std::size_t num_letters() const noexcept { return alphabet_.size(); }
    StateId initial() const noexcept { return initial_; }

    bool is_accepting(StateId q) const { return accepting_[q]; }
    const std::vector<bool>& accepting() const noexcept { return accepting_; }

    StateId next(StateId q, Letter a) const { return transitions_[q * num_letters() + a]; }
    std::span<const StateId> row(StateId q) const {
        return {transitions_.data() + q * num_letters(), num_letters()};
    }
    const std::vector<StateId>& transitions() const noexcept { return transitions_; }

    /// Extended transition function from the initial state.
    StateId reach(const Word& w) const;
    /// Extended transition function from an arbitrary state.
    StateId reach_from(StateId q, const Word& w) const;
    bool accepts(const Word& w) const { return is_accepting(reach(w)); }

    std::size_t num_accepting() const;

    friend bool operator==(const Dfa&, const Dfa&) = default;

private:
    Alphabet alphabet_;
    StateId initial_;
    std::vector<bool> accepting_;
    std::vector<StateId> transitions_;
};

} // namespace pdv
