#include "pdv/automata/generate.hpp"

#include <algorithm>
#include <random>
#include <map>
#include <set>

#include "pdv/automata/operations.hpp"
#include "pdv/errors.hpp"

namespace pdv {

Dfa random_dfa(std::size_t max_states, const Alphabet& alphabet, std::uint64_t seed) {
    if (max_states == 0) {
        throw input_error("random_dfa needs max_states >= 1");
    }
    std::mt19937_64 rng(seed);
    std::size_t n = std::uniform_int_distribution<std::size_t>(1, max_states)(rng);
    std::uniform_int_distribution<StateId> target(0, static_cast<StateId>(n - 1));
    std::bernoulli_distribution coin(0.5);

    std::vector<StateId> transitions(n * alphabet.size());
    for (auto& t : transitions) {
        t = target(rng);
    }
    std::vector<bool> accepting(n);
    for (std::size_t q = 0; q < n; ++q) {
        accepting[q] = coin(rng);
    }
    return trim(Dfa(alphabet, n, 0, std::move(accepting), std::move(transitions)));
}

std::vector<Dfa> derive_specs(const Dfa& dfa, std::size_t count, std::uint64_t seed, SpecDerivation mode) {
    constexpr int max_collisions = 20;

    std::vector<StateId> rejecting;
    for (StateId q = 0; q < dfa.num_states(); ++q) {
        if (!dfa.is_accepting(q)) {
            rejecting.push_back(q);
        }
    }
    std::vector<Dfa> specs;
    if (rejecting.empty() || count == 0) {
        return specs;
    }

    auto with_extra = [&](const std::vector<StateId>& extra) {
        std::vector<bool> accepting = dfa.accepting();
        for (StateId q : extra) {
            accepting[q] = true;
        }
        return Dfa(dfa.alphabet(), dfa.num_states(), dfa.initial(), std::move(accepting), dfa.transitions());
    };

    if (mode == SpecDerivation::literal) {
        specs.push_back(with_extra(rejecting));
        return specs;
    }

    std::mt19937_64 rng(seed);
    std::set<std::vector<StateId>> used;
    while (specs.size() < count) {
        bool added = false;
        for (int attempt = 0; attempt <= max_collisions && !added; ++attempt) {
            std::size_t size = std::uniform_int_distribution<std::size_t>(1, rejecting.size())(rng);
            std::vector<StateId> subset;
            std::sample(rejecting.begin(), rejecting.end(), std::back_inserter(subset), size, rng);
            if (used.insert(subset).second) {
                specs.push_back(with_extra(subset));
                added = true;
            }
        }
        if (!added) {
            break;
        }
    }
    return specs;
}

Dfa loop_language_dfa(const Alphabet& alphabet, const Word& w1, const Word& loop, const Word& w2) {
    if (loop.empty()) {
        throw input_error("loop word must not be empty");
    }
    alphabet.check(w1);
    alphabet.check(loop);
    alphabet.check(w2);

    // Positions in w1·loop·w2; reaching loop_end also allows another round.
    Word s = w1;
    s.insert(s.end(), loop.begin(), loop.end());
    s.insert(s.end(), w2.begin(), w2.end());
    const std::size_t loop_start = w1.size();
    const std::size_t loop_end = w1.size() + loop.size();
    const std::size_t final_pos = s.size();

    auto close = [&](std::set<std::size_t> set) {
        if (set.count(loop_end)) set.insert(loop_start);
        return set;
    };

    std::map<std::set<std::size_t>, StateId> ids;
    std::vector<std::set<std::size_t>> sets;
    auto intern = [&](std::set<std::size_t> set) {
        auto [it, inserted] = ids.emplace(set, static_cast<StateId>(sets.size()));
        if (inserted) sets.push_back(std::move(set));
        return it->second;
    };
    intern(close({0}));

    std::vector<StateId> transitions;
    std::vector<bool> accepting;
    for (std::size_t q = 0; q < sets.size(); ++q) {
        accepting.push_back(sets[q].count(final_pos) > 0);
        for (Letter a = 0; a < alphabet.size(); ++a) {
            std::set<std::size_t> next;
            for (std::size_t p : sets[q]) {
                if (p < final_pos && s[p] == a) next.insert(p + 1);
            }
            transitions.push_back(intern(close(std::move(next))));
        }
    }
    return minimize(Dfa(alphabet, sets.size(), 0, std::move(accepting), std::move(transitions)));
}

} // namespace pdv
