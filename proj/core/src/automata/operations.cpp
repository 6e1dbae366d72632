#include "pdv/automata/operations.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include "pdv/errors.hpp"

namespace pdv {

namespace {

constexpr StateId no_state = std::numeric_limits<StateId>::max();

void require_same_alphabet(const Dfa& first, const Dfa& second) {
    if (first.alphabet() != second.alphabet()) {
        throw input_error("automata are over different alphabets");
    }
}

// Index of visited pairs; dense for small products, hashed otherwise.
class PairIndex {
public:
    PairIndex(std::size_t n1, std::size_t n2) : n2_(n2) {
        if (n1 * n2 <= (std::size_t{1} << 22)) {
            dense_.assign(n1 * n2, no_state);
        }
    }

    StateId find(StateId p, StateId q) const {
        std::uint64_t key = std::uint64_t{p} * n2_ + q;
        if (!dense_.empty()) {
            return dense_[key];
        }
        auto it = sparse_.find(key);
        return it == sparse_.end() ? no_state : it->second;
    }

    void insert(StateId p, StateId q, StateId id) {
        std::uint64_t key = std::uint64_t{p} * n2_ + q;
        if (!dense_.empty()) {
            dense_[key] = id;
        } else {
            sparse_.emplace(key, id);
        }
    }

private:
    std::size_t n2_;
    std::vector<StateId> dense_;
    std::unordered_map<std::uint64_t, StateId> sparse_;
};

} // namespace

Dfa complement(const Dfa& dfa) {
    std::vector<bool> flipped(dfa.accepting());
    flipped.flip();
    return Dfa(dfa.alphabet(), dfa.num_states(), dfa.initial(), std::move(flipped), dfa.transitions());
}

ProductDfa product_with_pairs(const Dfa& first, const Dfa& second, const AcceptCombiner& combiner) {
    require_same_alphabet(first, second);
    const std::size_t k = first.num_letters();

    PairIndex index(first.num_states(), second.num_states());
    std::vector<std::pair<StateId, StateId>> pairs;
    std::vector<StateId> transitions;

    pairs.emplace_back(first.initial(), second.initial());
    index.insert(first.initial(), second.initial(), 0);

    for (std::size_t cur = 0; cur < pairs.size(); ++cur) {
        auto [p, q] = pairs[cur];
        for (Letter a = 0; a < k; ++a) {
            StateId np = first.next(p, a);
            StateId nq = second.next(q, a);
            StateId id = index.find(np, nq);
            if (id == no_state) {
                id = static_cast<StateId>(pairs.size());
                index.insert(np, nq, id);
                pairs.emplace_back(np, nq);
            }
            transitions.push_back(id);
        }
    }

    std::vector<bool> accepting(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        accepting[i] = combiner(first.is_accepting(pairs[i].first), second.is_accepting(pairs[i].second));
    }
    Dfa dfa(first.alphabet(), pairs.size(), 0, std::move(accepting), std::move(transitions));
    return {std::move(dfa), std::move(pairs)};
}

Dfa product(const Dfa& first, const Dfa& second, const AcceptCombiner& combiner) {
    return product_with_pairs(first, second, combiner).dfa;
}

std::optional<Word> shortest_accepted(const Dfa& dfa) {
    // Breadth-first search with letters in canonical order discovers every
    // state first along its (length, lexicographic)-least access word, and
    // dequeues states in that same order.
    const std::size_t n = dfa.num_states();
    std::vector<StateId> parent(n, no_state);
    std::vector<Letter> via(n, 0);
    std::vector<bool> seen(n, false);
    std::deque<StateId> queue{dfa.initial()};
    seen[dfa.initial()] = true;

    while (!queue.empty()) {
        StateId q = queue.front();
        queue.pop_front();
        if (dfa.is_accepting(q)) {
            Word w;
            for (StateId s = q; parent[s] != no_state; s = parent[s]) {
                w.push_back(via[s]);
            }
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (Letter a = 0; a < dfa.num_letters(); ++a) {
            StateId r = dfa.next(q, a);
            if (!seen[r]) {
                seen[r] = true;
                parent[r] = q;
                via[r] = a;
                queue.push_back(r);
            }
        }
    }
    return std::nullopt;
}

InclusionResult check_inclusion(const Dfa& first, const Dfa& second) {
    require_same_alphabet(first, second);
    Dfa difference = product(first, second, combine::first_only);
    return {shortest_accepted(difference)};
}

bool language_equal(const Dfa& first, const Dfa& second) {
    require_same_alphabet(first, second);
    return !shortest_accepted(product(first, second, combine::exclusive)).has_value();
}

std::vector<bool> reachable_states(const Dfa& dfa) {
    std::vector<bool> seen(dfa.num_states(), false);
    std::vector<StateId> stack{dfa.initial()};
    seen[dfa.initial()] = true;
    while (!stack.empty()) {
        StateId q = stack.back();
        stack.pop_back();
        for (StateId r : dfa.row(q)) {
            if (!seen[r]) {
                seen[r] = true;
                stack.push_back(r);
            }
        }
    }
    return seen;
}

Dfa trim(const Dfa& dfa) {
    std::vector<bool> keep = reachable_states(dfa);
    std::vector<StateId> renumber(dfa.num_states(), no_state);
    StateId next = 0;
    for (std::size_t q = 0; q < dfa.num_states(); ++q) {
        if (keep[q]) {
            renumber[q] = next++;
        }
    }
    if (next == dfa.num_states()) {
        return dfa;
    }
    std::vector<bool> accepting;
    std::vector<StateId> transitions;
    for (std::size_t q = 0; q < dfa.num_states(); ++q) {
        if (!keep[q]) {
            continue;
        }
        accepting.push_back(dfa.is_accepting(static_cast<StateId>(q)));
        for (StateId r : dfa.row(static_cast<StateId>(q))) {
            transitions.push_back(renumber[r]);
        }
    }
    return Dfa(dfa.alphabet(), next, renumber[dfa.initial()], std::move(accepting), std::move(transitions));
}

Dfa canonicalize(const Dfa& dfa) {
    const std::size_t k = dfa.num_letters();
    std::vector<StateId> renumber(dfa.num_states(), no_state);
    std::vector<StateId> order{dfa.initial()};
    renumber[dfa.initial()] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
        for (StateId r : dfa.row(order[i])) {
            if (renumber[r] == no_state) {
                renumber[r] = static_cast<StateId>(order.size());
                order.push_back(r);
            }
        }
    }
    std::vector<bool> accepting(order.size());
    std::vector<StateId> transitions;
    transitions.reserve(order.size() * k);
    for (std::size_t i = 0; i < order.size(); ++i) {
        accepting[i] = dfa.is_accepting(order[i]);
        for (StateId r : dfa.row(order[i])) {
            transitions.push_back(renumber[r]);
        }
    }
    return Dfa(dfa.alphabet(), order.size(), 0, std::move(accepting), std::move(transitions));
}

namespace {

// Hopcroft-style refinement over a refinable partition: every block occupies
// a contiguous range of `elems`, and marking a state moves it to the front of
// its block.
class Partition {
public:
    explicit Partition(std::size_t n) : elems_(n), loc_(n), block_of_(n, 0) {
        for (std::size_t i = 0; i < n; ++i) {
            elems_[i] = static_cast<StateId>(i);
            loc_[i] = i;
        }
        begin_.push_back(0);
        end_.push_back(n);
        marked_.push_back(0);
    }

    std::size_t num_blocks() const { return begin_.size(); }
    std::size_t block_of(StateId q) const { return block_of_[q]; }
    std::size_t size(std::size_t b) const { return end_[b] - begin_[b]; }
    std::span<const StateId> members(std::size_t b) const {
        return {elems_.data() + begin_[b], end_[b] - begin_[b]};
    }

    void mark(StateId q) {
        std::size_t b = block_of_[q];
        std::size_t pos = loc_[q];
        std::size_t target = begin_[b] + marked_[b];
        if (pos < target) {
            return; // already marked
        }
        if (marked_[b] == 0) {
            touched_.push_back(b);
        }
        std::swap(elems_[pos], elems_[target]);
        loc_[elems_[pos]] = pos;
        loc_[elems_[target]] = target;
        ++marked_[b];
    }

    /// Splits every touched block into marked/unmarked parts. Calls
    /// on_split(old_block, new_block) for each proper split; the new block
    /// holds the marked states.
    template <typename OnSplit>
    void split_marked(OnSplit on_split) {
        for (std::size_t b : touched_) {
            std::size_t m = marked_[b];
            marked_[b] = 0;
            if (m == size(b)) {
                continue;
            }
            std::size_t nb = begin_.size();
            begin_.push_back(begin_[b]);
            end_.push_back(begin_[b] + m);
            marked_.push_back(0);
            begin_[b] += m;
            for (std::size_t i = begin_[nb]; i < end_[nb]; ++i) {
                block_of_[elems_[i]] = nb;
            }
            on_split(b, nb);
        }
        touched_.clear();
    }

private:
    std::vector<StateId> elems_;
    std::vector<std::size_t> loc_;
    std::vector<std::size_t> block_of_;
    std::vector<std::size_t> begin_, end_, marked_;
    std::vector<std::size_t> touched_;
};

} // namespace

Dfa minimize(const Dfa& input) {
    Dfa dfa = trim(input);
    const std::size_t n = dfa.num_states();
    const std::size_t k = dfa.num_letters();

    // predecessors[a][q] = states p with δ(p, a) = q, in CSR layout
    std::vector<std::vector<std::size_t>> pred_start(k, std::vector<std::size_t>(n + 1, 0));
    std::vector<std::vector<StateId>> pred(k, std::vector<StateId>(n));
    for (Letter a = 0; a < k; ++a) {
        auto& start = pred_start[a];
        for (StateId p = 0; p < n; ++p) {
            ++start[dfa.next(p, a) + 1];
        }
        for (std::size_t q = 0; q < n; ++q) {
            start[q + 1] += start[q];
        }
        std::vector<std::size_t> fill(start.begin(), start.end() - 1);
        for (StateId p = 0; p < n; ++p) {
            pred[a][fill[dfa.next(p, a)]++] = p;
        }
    }

    Partition partition(n);
    std::vector<bool> in_worklist;
    std::deque<std::size_t> worklist;

    for (StateId q = 0; q < n; ++q) {
        if (dfa.is_accepting(q)) {
            partition.mark(q);
        }
    }
    partition.split_marked([](std::size_t, std::size_t) {});
    in_worklist.assign(partition.num_blocks(), false);
    for (std::size_t b = 0; b < partition.num_blocks(); ++b) {
        worklist.push_back(b);
        in_worklist[b] = true;
    }

    std::vector<StateId> splitter;
    while (!worklist.empty()) {
        std::size_t b = worklist.front();
        worklist.pop_front();
        in_worklist[b] = false;
        auto members = partition.members(b);
        splitter.assign(members.begin(), members.end());

        for (Letter a = 0; a < k; ++a) {
            for (StateId q : splitter) {
                for (std::size_t i = pred_start[a][q]; i < pred_start[a][q + 1]; ++i) {
                    partition.mark(pred[a][i]);
                }
            }
            partition.split_marked([&](std::size_t old_block, std::size_t new_block) {
                in_worklist.resize(partition.num_blocks(), false);
                if (in_worklist[old_block]) {
                    worklist.push_back(new_block);
                    in_worklist[new_block] = true;
                } else {
                    std::size_t smaller =
                        partition.size(new_block) <= partition.size(old_block) ? new_block : old_block;
                    worklist.push_back(smaller);
                    in_worklist[smaller] = true;
                }
            });
        }
    }

    const std::size_t blocks = partition.num_blocks();
    std::vector<bool> accepting(blocks);
    std::vector<StateId> transitions(blocks * k);
    for (std::size_t b = 0; b < blocks; ++b) {
        StateId rep = partition.members(b).front();
        accepting[b] = dfa.is_accepting(rep);
        for (Letter a = 0; a < k; ++a) {
            transitions[b * k + a] = static_cast<StateId>(partition.block_of(dfa.next(rep, a)));
        }
    }
    Dfa quotient(dfa.alphabet(), blocks, static_cast<StateId>(partition.block_of(dfa.initial())),
                 std::move(accepting), std::move(transitions));
    return canonicalize(quotient);
}

} // namespace pdv
