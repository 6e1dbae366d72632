#include "pdv/automata/dfa.hpp"

#include <algorithm>
#include <string>

#include "pdv/errors.hpp"

namespace pdv {

Dfa::Dfa(Alphabet alphabet, std::size_t num_states, StateId initial, std::vector<bool> accepting,
         std::vector<StateId> transitions)
    : alphabet_(std::move(alphabet)), initial_(initial), accepting_(std::move(accepting)),
      transitions_(std::move(transitions)) {
    if (alphabet_.size() == 0) {
        throw input_error("dfa alphabet must not be empty");
    }
    if (num_states == 0) {
        throw input_error("dfa must have at least one state");
    }
    if (accepting_.size() != num_states) {
        throw input_error("accepting mask has " + std::to_string(accepting_.size()) + " entries, expected " +
                          std::to_string(num_states));
    }
    if (initial_ >= num_states) {
        throw input_error("initial state " + std::to_string(initial_) + " out of range");
    }
    if (transitions_.size() != num_states * alphabet_.size()) {
        throw input_error("transition table has " + std::to_string(transitions_.size()) + " entries, expected " +
                          std::to_string(num_states * alphabet_.size()));
    }
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
        if (transitions_[i] >= num_states) {
            throw input_error("transition from state " + std::to_string(i / alphabet_.size()) + " on '" +
                              alphabet_.symbol(static_cast<Letter>(i % alphabet_.size())) + "' targets state " +
                              std::to_string(transitions_[i]) + " out of range");
        }
    }
}

Dfa Dfa::universal(Alphabet alphabet) {
    std::size_t k = alphabet.size();
    return Dfa(std::move(alphabet), 1, 0, {true}, std::vector<StateId>(k, 0));
}

Dfa Dfa::empty(Alphabet alphabet) {
    std::size_t k = alphabet.size();
    return Dfa(std::move(alphabet), 1, 0, {false}, std::vector<StateId>(k, 0));
}

StateId Dfa::reach(const Word& w) const { return reach_from(initial_, w); }

StateId Dfa::reach_from(StateId q, const Word& w) const {
    std::size_t k = num_letters();
    for (Letter a : w) {
        if (a >= k) {
            alphabet_.check(w);
        }
        q = transitions_[q * k + a];
    }
    return q;
}

std::size_t Dfa::num_accepting() const { return static_cast<std::size_t>(std::count(accepting_.begin(), accepting_.end(), true)); }

} // namespace pdv
