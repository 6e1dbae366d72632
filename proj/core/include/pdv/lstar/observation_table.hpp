#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pdv/automata/dfa.hpp"
#include "pdv/errors.hpp"
#include "pdv/oracle/language_oracle.hpp"

namespace pdv {

/// Resource bounds for learning. L* need not terminate on non-regular
/// targets, so every learner runs under these.
struct LearnerLimits {
    /// Cap on the oracle's total query counter, including queries issued by
    /// other parties sharing the oracle.
    std::uint64_t max_queries = 10'000'000;
    /// Cap on the number of distinct rows (hypothesis states).
    std::size_t max_states = 5000;
    std::optional<std::chrono::steady_clock::time_point> deadline;
};

struct Hypothesis {
    Dfa dfa;
    /// Number of counterexamples processed before this hypothesis was built.
    std::size_t generation = 0;
};

/// Angluin observation table.
///
/// Prefixes S are prefix-closed, suffixes E are suffix-closed, and both
/// contain the empty word. Each row maps a word in S ∪ S·Σ to its membership
/// bits over E. Membership answers are cached per word, so a word reached as
/// several (s, e) concatenations is queried once.
class ObservationTable {
public:
    ObservationTable(LanguageOracle& oracle, LearnerLimits limits = {});

    /// Adds prefixes (closedness) and suffixes (consistency) until the table
    /// is closed and consistent. Throws budget_error when a limit is hit;
    /// the table keeps everything learned so far.
    void close_and_make_consistent();

    /// DFA over the distinct rows of S. Requires a closed and consistent
    /// table; throws contract_error otherwise.
    Hypothesis build_hypothesis() const;

    /// Classic counterexample processing: all prefixes of `counterexample`
    /// join S, then the table is closed again. Throws contract_error when
    /// `hypothesis` and the oracle agree on the word.
    void refine(const Word& counterexample, const Dfa& hypothesis);

    bool is_closed() const;
    bool is_consistent() const;

    const std::vector<Word>& prefixes() const noexcept { return prefixes_; }
    const std::vector<Word>& suffixes() const noexcept { return suffixes_; }

    /// Cached membership answer for a word, if it was ever queried.
    std::optional<bool> entry(const Word& w) const;
    std::size_t num_entries() const noexcept { return cells_.size(); }
    std::size_t num_distinct_rows() const;
    std::size_t generation() const noexcept { return generation_; }

    /// Membership queries this table has sent to the oracle.
    std::uint64_t queries_issued() const noexcept { return queries_issued_; }

    const std::string& row(const Word& prefix) const;

private:
    bool member(const Word& w);
    void add_prefix(const Word& s);
    void add_suffix(const Word& e);
    void ensure_row(const Word& t);
    std::optional<Word> find_unclosed() const;
    std::optional<Word> find_inconsistency() const;
    [[noreturn]] void exhausted(budget_error::kind kind, const std::string& what) const;

    LanguageOracle* oracle_;
    LearnerLimits limits_;
    std::vector<Word> prefixes_;
    std::unordered_set<Word, WordHash> prefix_set_;
    std::vector<Word> suffixes_;
    std::unordered_set<Word, WordHash> suffix_set_;
    // Rows for S ∪ S·Σ, kept in insertion order for deterministic refills.
    std::vector<Word> row_order_;
    std::unordered_map<Word, std::string, WordHash> rows_;
    std::unordered_map<Word, bool, WordHash> cells_;
    std::uint64_t queries_issued_ = 0;
    std::size_t generation_ = 0;
    bool settled_ = false;
};

/// L* driver holding a table and the most recent hypothesis.
class Learner {
public:
    explicit Learner(LanguageOracle& oracle, LearnerLimits limits = {});

    /// Current hypothesis, closing the table first if needed.
    const Hypothesis& hypothesis();

    /// Feeds a counterexample for the current hypothesis back to the table.
    void refine(const Word& counterexample);

    const ObservationTable& table() const noexcept { return table_; }

private:
    ObservationTable table_;
    std::optional<Hypothesis> current_;
};

/// Runs L* against a known target with exact equivalence queries
/// (inclusion checks in both directions). Returns the final hypothesis.
Hypothesis learn_exact(LanguageOracle& oracle, const Dfa& target, LearnerLimits limits = {});

} // namespace pdv
