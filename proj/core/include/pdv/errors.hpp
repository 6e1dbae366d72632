#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace pdv {

/// Malformed user input: bad letters, mismatched alphabets, unparsable files.
class input_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value left the finite range during RNN inference.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A caller broke an API precondition. Signals a bug, never user error.
class contract_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when a learner or verifier runs out of queries, states or time.
class budget_error : public std::runtime_error {
public:
    enum class kind { queries, states, rounds, wall_clock };

    budget_error(kind k, std::string message, std::uint64_t queries_used, std::size_t rows_seen)
        : std::runtime_error(std::move(message)), kind_(k), queries_used_(queries_used), rows_seen_(rows_seen) {}

    kind which() const noexcept { return kind_; }
    std::uint64_t queries_used() const noexcept { return queries_used_; }
    std::size_t rows_seen() const noexcept { return rows_seen_; }

private:
    kind kind_;
    std::uint64_t queries_used_;
    std::size_t rows_seen_;
};

inline const char* to_string(budget_error::kind k) {
    switch (k) {
        case budget_error::kind::queries: return "query budget";
        case budget_error::kind::states: return "hypothesis size cap";
        case budget_error::kind::rounds: return "round budget";
        case budget_error::kind::wall_clock: return "wall-clock budget";
    }
    return "budget";
}

} // namespace pdv
