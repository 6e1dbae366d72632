#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "pdv/automata/dfa.hpp"

namespace pdv::testing {

using Edge = std::tuple<StateId, std::string, StateId>;

/// DFA from an explicit edge list; every (state, letter) pair must be listed.
inline Dfa make_dfa(const std::vector<std::string>& symbols, std::size_t n, StateId initial,
                    const std::vector<StateId>& accepting, const std::vector<Edge>& edges) {
    Alphabet alphabet(symbols);
    std::vector<bool> acc(n, false);
    for (StateId q : accepting) acc[q] = true;
    std::vector<StateId> delta(n * alphabet.size(), static_cast<StateId>(n));
    for (const auto& [src, sym, dst] : edges) delta[src * alphabet.size() + alphabet.index_of(sym)] = dst;
    return Dfa(alphabet, n, initial, acc, delta);
}

inline Word word(const Alphabet& alphabet, const std::string& compact) {
    Word w;
    for (char c : compact) w.push_back(alphabet.index_of(std::string(1, c)));
    return w;
}

/// The five-state automaton with the abce loop through state 0.
inline Dfa five_state_dfa() {
    return make_dfa({"a", "b", "c", "d", "e"}, 5, 0, {1},
                    {{0, "e", 1}, {0, "a", 3}, {0, "c", 3}, {0, "b", 4}, {0, "d", 4},
                     {1, "a", 0}, {1, "b", 4}, {1, "c", 4}, {1, "d", 4}, {1, "e", 4},
                     {2, "e", 0}, {2, "b", 2}, {2, "c", 2}, {2, "d", 2}, {2, "a", 3},
                     {3, "b", 2}, {3, "a", 4}, {3, "c", 4}, {3, "d", 4}, {3, "e", 4},
                     {4, "a", 3}, {4, "c", 3}, {4, "b", 4}, {4, "d", 4}, {4, "e", 4}});
}

/// (abce)*·e over {a,b,c,d,e}, written out state by state.
inline Dfa abce_star_e() {
    std::vector<Edge> edges{{0, "a", 1}, {1, "b", 2}, {2, "c", 3}, {3, "e", 0}, {0, "e", 4}};
    for (StateId q = 0; q <= 5; ++q) {
        for (std::string s : {"a", "b", "c", "d", "e"}) {
            bool listed = false;
            for (const auto& [src, sym, dst] : edges) listed |= src == q && sym == s;
            if (!listed) edges.emplace_back(q, s, 5);
        }
    }
    return make_dfa({"a", "b", "c", "d", "e"}, 6, 0, {4}, edges);
}

/// Every word over `letters` letters of length <= max_len, shortest first.
inline std::vector<Word> all_words(std::size_t letters, std::size_t max_len) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (Letter a = 0; a < letters; ++a) {
                Word w = out[i];
                w.push_back(a);
                out.push_back(std::move(w));
            }
        }
        begin = end;
    }
    return out;
}

/// Brute-force state count of the minimal DFA: distinct Nerode classes of
/// reachable states, separated by suffixes up to length n.
inline std::size_t nerode_classes(const Dfa& dfa) {
    std::vector<bool> seen(dfa.num_states(), false);
    std::vector<StateId> stack{dfa.initial()};
    seen[dfa.initial()] = true;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId t : dfa.row(q)) {
            if (!seen[t]) {
                seen[t] = true;
                stack.push_back(t);
            }
        }
    }
    auto suffixes = all_words(dfa.num_letters(), dfa.num_states());
    std::vector<std::vector<bool>> signatures;
    for (StateId q = 0; q < dfa.num_states(); ++q) {
        if (!seen[q]) continue;
        std::vector<bool> sig;
        for (const auto& s : suffixes) sig.push_back(dfa.is_accepting(dfa.reach_from(q, s)));
        bool known = false;
        for (const auto& other : signatures) known |= other == sig;
        if (!known) signatures.push_back(std::move(sig));
    }
    return signatures.size();
}

} // namespace pdv::testing
