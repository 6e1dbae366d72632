#pragma once

#include <atomic>
#include <cstdint>
#include <string>

#include "pdv/automata/dfa.hpp"

namespace pdv {

/// Black-box membership interface for the system under test.
///
/// Every call to membership() increments the query counter by exactly one,
/// also when issued concurrently. Implementations must answer the same word
/// the same way every time.
class LanguageOracle {
public:
    explicit LanguageOracle(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}
    virtual ~LanguageOracle() = default;

    LanguageOracle(const LanguageOracle&) = delete;
    LanguageOracle& operator=(const LanguageOracle&) = delete;

    /// Throws input_error when w uses letters outside the oracle's alphabet.
    bool membership(const Word& w) {
        alphabet_.check(w);
        queries_.fetch_add(1, std::memory_order_relaxed);
        return evaluate(w);
    }

    std::uint64_t query_count() const noexcept { return queries_.load(std::memory_order_relaxed); }
    const Alphabet& alphabet() const noexcept { return alphabet_; }

    virtual std::string describe() const = 0;

protected:
    virtual bool evaluate(const Word& w) = 0;

private:
    Alphabet alphabet_;
    std::atomic<std::uint64_t> queries_{0};
};

/// Answers membership exactly as a DFA does.
class DfaOracle final : public LanguageOracle {
public:
    explicit DfaOracle(Dfa dfa);

    const Dfa& dfa() const noexcept { return dfa_; }
    std::string describe() const override;

protected:
    bool evaluate(const Word& w) override { return dfa_.accepts(w); }

private:
    Dfa dfa_;
};

/// Test double with known errors: accepts L(base) ⊕ L(fault).
class FaultInjectedOracle final : public LanguageOracle {
public:
    /// Throws input_error when the two automata use different alphabets.
    FaultInjectedOracle(Dfa base, Dfa fault);

    const Dfa& base() const noexcept { return base_; }
    const Dfa& fault() const noexcept { return fault_; }
    std::string describe() const override;

protected:
    bool evaluate(const Word& w) override { return base_.accepts(w) != fault_.accepts(w); }

private:
    Dfa base_;
    Dfa fault_;
};

} // namespace pdv
