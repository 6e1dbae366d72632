#include "pdv/lstar/observation_table.hpp"

#include <map>

#include "pdv/automata/operations.hpp"

namespace pdv {

namespace {

Word concat(const Word& u, const Word& v) {
    Word w;
    w.reserve(u.size() + v.size());
    w.insert(w.end(), u.begin(), u.end());
    w.insert(w.end(), v.begin(), v.end());
    return w;
}

Word extend(const Word& u, Letter a) {
    Word w;
    w.reserve(u.size() + 1);
    w.insert(w.end(), u.begin(), u.end());
    w.push_back(a);
    return w;
}

} // namespace

ObservationTable::ObservationTable(LanguageOracle& oracle, LearnerLimits limits)
    : oracle_(&oracle), limits_(limits) {
    suffixes_.push_back(Word{});
    suffix_set_.insert(Word{});
    add_prefix(Word{});
}

void ObservationTable::exhausted(budget_error::kind kind, const std::string& what) const {
    throw budget_error(kind, what, oracle_->query_count(), num_distinct_rows());
}

bool ObservationTable::member(const Word& w) {
    if (auto it = cells_.find(w); it != cells_.end()) {
        return it->second;
    }
    if (oracle_->query_count() >= limits_.max_queries) {
        exhausted(budget_error::kind::queries,
                  "membership query budget of " + std::to_string(limits_.max_queries) + " exhausted");
    }
    if (limits_.deadline && (queries_issued_ & 63) == 0 && std::chrono::steady_clock::now() >= *limits_.deadline) {
        exhausted(budget_error::kind::wall_clock, "wall-clock budget exhausted during table filling");
    }
    bool answer = oracle_->membership(w);
    ++queries_issued_;
    cells_.emplace(w, answer);
    return answer;
}

std::optional<bool> ObservationTable::entry(const Word& w) const {
    if (auto it = cells_.find(w); it != cells_.end()) {
        return it->second;
    }
    return std::nullopt;
}

const std::string& ObservationTable::row(const Word& prefix) const {
    auto it = rows_.find(prefix);
    if (it == rows_.end()) {
        throw contract_error("no row for a word outside S ∪ S·Σ");
    }
    return it->second;
}

void ObservationTable::ensure_row(const Word& t) {
    if (rows_.contains(t)) {
        return;
    }
    std::string bits;
    bits.reserve(suffixes_.size());
    for (const Word& e : suffixes_) {
        bits.push_back(member(concat(t, e)) ? '1' : '0');
    }
    row_order_.push_back(t);
    rows_.emplace(t, std::move(bits));
}

void ObservationTable::add_prefix(const Word& s) {
    if (!prefix_set_.insert(s).second) {
        return;
    }
    settled_ = false;
    prefixes_.push_back(s);
    ensure_row(s);
    for (Letter a = 0; a < oracle_->alphabet().size(); ++a) {
        ensure_row(extend(s, a));
    }
}

void ObservationTable::add_suffix(const Word& e) {
    if (!suffix_set_.insert(e).second) {
        return;
    }
    settled_ = false;
    suffixes_.push_back(e);
    for (const Word& t : row_order_) {
        bool bit = member(concat(t, e));
        rows_[t].push_back(bit ? '1' : '0');
    }
}

std::size_t ObservationTable::num_distinct_rows() const {
    std::unordered_set<std::string> distinct;
    for (const Word& s : prefixes_) {
        if (auto it = rows_.find(s); it != rows_.end()) {
            distinct.insert(it->second);
        }
    }
    return distinct.size();
}

std::optional<Word> ObservationTable::find_unclosed() const {
    std::unordered_set<std::string> upper;
    for (const Word& s : prefixes_) {
        upper.insert(rows_.at(s));
    }
    const std::size_t k = oracle_->alphabet().size();
    for (const Word& s : prefixes_) {
        for (Letter a = 0; a < k; ++a) {
            Word t = extend(s, a);
            if (!upper.contains(rows_.at(t))) {
                return t;
            }
        }
    }
    return std::nullopt;
}

std::optional<Word> ObservationTable::find_inconsistency() const {
    // Comparing every prefix with the first prefix of the same row suffices,
    // since row equality is transitive.
    std::unordered_map<std::string, const Word*> representative;
    const std::size_t k = oracle_->alphabet().size();
    for (const Word& s : prefixes_) {
        const std::string& r = rows_.at(s);
        auto [it, fresh] = representative.emplace(r, &s);
        if (fresh) {
            continue;
        }
        const Word& s0 = *it->second;
        for (Letter a = 0; a < k; ++a) {
            const std::string& r0 = rows_.at(extend(s0, a));
            const std::string& r1 = rows_.at(extend(s, a));
            for (std::size_t j = 0; j < r0.size(); ++j) {
                if (r0[j] != r1[j]) {
                    Word e{a};
                    e.insert(e.end(), suffixes_[j].begin(), suffixes_[j].end());
                    return e;
                }
            }
        }
    }
    return std::nullopt;
}

bool ObservationTable::is_closed() const { return !find_unclosed().has_value(); }

bool ObservationTable::is_consistent() const { return !find_inconsistency().has_value(); }

void ObservationTable::close_and_make_consistent() {
    while (true) {
        if (num_distinct_rows() > limits_.max_states) {
            exhausted(budget_error::kind::states,
                      "hypothesis size cap of " + std::to_string(limits_.max_states) + " states exceeded");
        }
        if (auto t = find_unclosed()) {
            add_prefix(*t);
            continue;
        }
        if (auto e = find_inconsistency()) {
            add_suffix(*e);
            continue;
        }
        break;
    }
    settled_ = true;
}

Hypothesis ObservationTable::build_hypothesis() const {
    if (!settled_) {
        throw contract_error("build_hypothesis on a table that is not closed and consistent");
    }
    const std::size_t k = oracle_->alphabet().size();
    std::unordered_map<std::string, StateId> state_of;
    std::vector<const Word*> access;
    for (const Word& s : prefixes_) {
        if (state_of.emplace(rows_.at(s), static_cast<StateId>(access.size())).second) {
            access.push_back(&s);
        }
    }
    std::vector<bool> accepting(access.size());
    std::vector<StateId> transitions(access.size() * k);
    for (std::size_t q = 0; q < access.size(); ++q) {
        const std::string& r = rows_.at(*access[q]);
        accepting[q] = r[0] == '1'; // suffixes_[0] is ε
        for (Letter a = 0; a < k; ++a) {
            transitions[q * k + a] = state_of.at(rows_.at(extend(*access[q], a)));
        }
    }
    Dfa dfa(oracle_->alphabet(), access.size(), 0, std::move(accepting), std::move(transitions));
    return Hypothesis{std::move(dfa), generation_};
}

void ObservationTable::refine(const Word& counterexample, const Dfa& hypothesis) {
    oracle_->alphabet().check(counterexample);
    if (member(counterexample) == hypothesis.accepts(counterexample)) {
        throw contract_error("refine: word " + oracle_->alphabet().format_word(counterexample) +
                             " does not distinguish hypothesis and oracle");
    }
    for (std::size_t len = 0; len <= counterexample.size(); ++len) {
        add_prefix(Word(counterexample.begin(), counterexample.begin() + static_cast<std::ptrdiff_t>(len)));
    }
    ++generation_;
    close_and_make_consistent();
}

// ---------------------------------------------------------------------------

Learner::Learner(LanguageOracle& oracle, LearnerLimits limits) : table_(oracle, limits) {}

const Hypothesis& Learner::hypothesis() {
    if (!current_) {
        table_.close_and_make_consistent();
        current_ = table_.build_hypothesis();
    }
    return *current_;
}

void Learner::refine(const Word& counterexample) {
    const Dfa& h = hypothesis().dfa;
    Dfa previous = h;
    current_.reset();
    table_.refine(counterexample, previous);
    current_ = table_.build_hypothesis();
}

Hypothesis learn_exact(LanguageOracle& oracle, const Dfa& target, LearnerLimits limits) {
    Learner learner(oracle, limits);
    while (true) {
        const Dfa& h = learner.hypothesis().dfa;
        auto missing = check_inclusion(target, h);
        if (!missing.holds()) {
            learner.refine(*missing.counterexample);
            continue;
        }
        auto extra = check_inclusion(h, target);
        if (!extra.holds()) {
            learner.refine(*extra.counterexample);
            continue;
        }
        return learner.hypothesis();
    }
}

} // namespace pdv
