#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string_view>

#include "pdv/automata/operations.hpp"
#include "pdv/oracle/language_oracle.hpp"
#include "pdv/sampling/word_distribution.hpp"
#include "pdv/verify/verdict.hpp"

namespace pdv {

/// Which sample-size bound the plain statistical check uses.
enum class SmcBound {
    /// ceil(ln(2/epsilon) / (2 gamma^2)), as stated for the SMC loop.
    paper,
    /// ceil(ln(2/gamma) / (2 epsilon^2)), the textbook Hoeffding form.
    hoeffding,
};

struct Budgets {
    std::uint64_t max_queries = 10'000'000;
    std::uint64_t max_rounds = 200;
    std::chrono::duration<double> wall_clock{600.0};
    std::size_t max_states = 5000;
};

struct VerifyConfig {
    double epsilon = 5e-4;
    double gamma = 5e-4;
    std::uint64_t seed = 0;
    SmcBound smc_bound = SmcBound::paper;
    /// PDV only: use smc_sample_count for every sampled inclusion check
    /// instead of the PAC schedule.
    bool fixed_sample_count = false;
    Budgets budgets;
};

/// Throws input_error unless both parameters lie in (0, 1).
std::uint64_t smc_sample_count(double epsilon, double gamma, SmcBound bound = SmcBound::paper);

/// Statistical model checking: samples smc_sample_count words and reports
/// the first one the oracle accepts and the spec rejects.
Verdict smc_check(LanguageOracle& oracle, const Dfa& spec, const WordDistribution& dist,
                  const VerifyConfig& config);

/// Sampled test of L(oracle) ⊆ L(hypothesis): draws `samples` words and
/// returns the first accepted by the oracle but rejected by the hypothesis.
/// The hypothesis is evaluated first, so the oracle is only queried on
/// words the hypothesis rejects. `deadline`, when set, is polled every
/// 1024 samples; on expiry the check returns early with `timed_out` set.
struct SampledInclusion {
    std::optional<Word> counterexample;
    bool timed_out = false;
    bool holds() const noexcept { return !counterexample && !timed_out; }
};

SampledInclusion smc_inclusion(LanguageOracle& oracle, const Dfa& hypothesis, WordSampler& sampler,
                               std::uint64_t samples,
                               std::optional<std::chrono::steady_clock::time_point> deadline = std::nullopt,
                               std::uint64_t max_queries = UINT64_MAX);

/// Automaton abstraction and model checking: PAC L* extraction to
/// completion, then one exact inclusion check of the extracted automaton.
/// An unconfirmed witness ends the run as budget_exhausted("spurious
/// counterexample").
Verdict aamc(LanguageOracle& oracle, const Dfa& spec, const WordDistribution& dist, const VerifyConfig& config);

/// Property-directed verification: L* whose equivalence queries are
/// replaced by an exact check of L(H) ⊆ L(spec) followed, when that holds,
/// by a sampled check of L(oracle) ⊆ L(H).
Verdict pdv(LanguageOracle& oracle, const Dfa& spec, const WordDistribution& dist, const VerifyConfig& config);

enum class Method { smc, aamc, pdv };

const char* to_string(Method method);
Method parse_method(std::string_view name);

Verdict run_method(Method method, LanguageOracle& oracle, const Dfa& spec, const WordDistribution& dist,
                   const VerifyConfig& config);

} // namespace pdv
