#include "pdv/verify/verify.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "pdv/errors.hpp"
#include "pdv/lstar/observation_table.hpp"
#include "pdv/lstar/pac.hpp"

namespace pdv {

const char* to_string(Outcome outcome) {
    switch (outcome) {
        case Outcome::counterexample_found: return "counterexample";
        case Outcome::property_satisfied: return "satisfied";
        case Outcome::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
}

const char* to_string(Method method) {
    switch (method) {
        case Method::smc: return "smc";
        case Method::aamc: return "aamc";
        case Method::pdv: return "pdv";
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    if (name == "smc") return Method::smc;
    if (name == "aamc") return Method::aamc;
    if (name == "pdv") return Method::pdv;
    throw input_error("unknown method '" + std::string(name) + "' (expected smc, aamc or pdv)");
}

std::uint64_t smc_sample_count(double epsilon, double gamma, SmcBound bound) {
    if (!(epsilon > 0.0 && epsilon < 1.0) || !(gamma > 0.0 && gamma < 1.0)) {
        throw input_error("epsilon and gamma must lie in (0, 1)");
    }
    double count = bound == SmcBound::paper ? std::log(2.0 / epsilon) / (2.0 * gamma * gamma)
                                            : std::log(2.0 / gamma) / (2.0 * epsilon * epsilon);
    return static_cast<std::uint64_t>(std::ceil(count));
}

namespace {

using Clock = std::chrono::steady_clock;

// Shared bookkeeping for one verification run.
class Run {
public:
    Run(LanguageOracle& oracle, const Dfa& spec, const WordDistribution& dist, const VerifyConfig& config)
        : oracle_(oracle), spec_(spec), config_(config), start_(Clock::now()),
          deadline_(start_ + std::chrono::duration_cast<Clock::duration>(config.budgets.wall_clock)),
          base_queries_(oracle.query_count()), sampler_(dist, split_seed(config.seed, 0)) {
        if (spec.alphabet() != oracle.alphabet()) {
            throw input_error("specification and oracle use different alphabets");
        }
        if (dist.alphabet_size() != oracle.alphabet().size()) {
            throw input_error("word distribution does not match the oracle alphabet");
        }
        verdict_.epsilon = config.epsilon;
        verdict_.gamma = config.gamma;
    }

    LanguageOracle& oracle() { return oracle_; }
    const Dfa& spec() const { return spec_; }
    const VerifyConfig& config() const { return config_; }
    WordSampler& sampler() { return sampler_; }
    Verdict& verdict() { return verdict_; }
    Clock::time_point deadline() const { return deadline_; }

    std::uint64_t query_limit() const {
        std::uint64_t cap = config_.budgets.max_queries;
        return cap > std::numeric_limits<std::uint64_t>::max() - base_queries_ ? std::numeric_limits<std::uint64_t>::max()
                                                                               : base_queries_ + cap;
    }

    LearnerLimits learner_limits() const { return {query_limit(), config_.budgets.max_states, deadline_}; }

    bool out_of_time() const { return Clock::now() >= deadline_; }
    bool out_of_queries() const { return oracle_.query_count() >= query_limit(); }

    void record_hypothesis(const Dfa& h) {
        verdict_.stats.hypothesis_sizes.push_back(h.num_states());
        verdict_.stats.eq_rounds = verdict_.stats.hypothesis_sizes.size();
        verdict_.hypothesis = h;
    }

    Verdict counterexample(const Word& w) {
        // Re-check both conditions right before reporting.
        bool accepted = oracle_.membership(w);
        bool allowed = spec_.accepts(w);
        if (!accepted || allowed) {
            throw contract_error("counterexample " + oracle_.alphabet().format_word(w) +
                                 " failed its soundness re-check");
        }
        verdict_.outcome = Outcome::counterexample_found;
        verdict_.counterexample = w;
        verdict_.confirmed = true;
        verdict_.stats.counterexample_length = w.size();
        return finish();
    }

    Verdict satisfied() {
        verdict_.outcome = Outcome::property_satisfied;
        return finish();
    }

    Verdict exhausted(std::string reason) {
        verdict_.outcome = Outcome::budget_exhausted;
        verdict_.reason = std::move(reason);
        return finish();
    }

private:
    Verdict finish() {
        auto& stats = verdict_.stats;
        stats.wall_seconds = std::chrono::duration<double>(Clock::now() - start_).count();
        stats.membership_queries = oracle_.query_count() - base_queries_;
        stats.sampled_words = sampler_.sampled();
        stats.truncated_samples = sampler_.truncated();
        return verdict_;
    }

    LanguageOracle& oracle_;
    const Dfa& spec_;
    VerifyConfig config_;
    Clock::time_point start_;
    Clock::time_point deadline_;
    std::uint64_t base_queries_;
    WordSampler sampler_;
    Verdict verdict_;
};

// Sampled equivalence query for PAC extraction: first sampled word on which
// the hypothesis and the oracle disagree.
SampledInclusion sampled_equivalence(Run& run, const Dfa& hypothesis, std::uint64_t samples) {
    SampledInclusion result;
    for (std::uint64_t i = 0; i < samples; ++i) {
        if ((i & 1023) == 0 && (run.out_of_time() || run.out_of_queries())) {
            result.timed_out = true;
            return result;
        }
        Word w = run.sampler()();
        if (run.oracle().membership(w) != hypothesis.accepts(w)) {
            result.counterexample = std::move(w);
            return result;
        }
    }
    return result;
}

std::string exhausted_reason(const Run& run) {
    return run.out_of_time() ? "wall-clock budget exhausted" : "membership query budget exhausted";
}

} // namespace

SampledInclusion smc_inclusion(LanguageOracle& oracle, const Dfa& hypothesis, WordSampler& sampler,
                               std::uint64_t samples, std::optional<std::chrono::steady_clock::time_point> deadline,
                               std::uint64_t max_queries) {
    if (samples == 0) {
        throw input_error("smc_inclusion needs at least one sample");
    }
    SampledInclusion result;
    for (std::uint64_t i = 0; i < samples; ++i) {
        if ((i & 1023) == 0 && ((deadline && Clock::now() >= *deadline) || oracle.query_count() >= max_queries)) {
            result.timed_out = true;
            return result;
        }
        Word w = sampler();
        if (!hypothesis.accepts(w) && oracle.membership(w)) {
            result.counterexample = std::move(w);
            return result;
        }
    }
    return result;
}

Verdict smc_check(LanguageOracle& oracle, const Dfa& spec, const WordDistribution& dist, const VerifyConfig& config) {
    Run run(oracle, spec, dist, config);
    const std::uint64_t samples = smc_sample_count(config.epsilon, config.gamma, config.smc_bound);
    for (std::uint64_t i = 0; i < samples; ++i) {
        if ((i & 1023) == 0 && (run.out_of_time() || run.out_of_queries())) {
            return run.exhausted(exhausted_reason(run));
        }
        Word w = run.sampler()();
        if (!spec.accepts(w) && oracle.membership(w)) {
            return run.counterexample(w);
        }
    }
    return run.satisfied();
}

Verdict aamc(LanguageOracle& oracle, const Dfa& spec, const WordDistribution& dist, const VerifyConfig& config) {
    Run run(oracle, spec, dist, config);
    std::optional<Learner> learner;
    try {
        learner.emplace(oracle, run.learner_limits());
        // PAC extraction to completion.
        while (true) {
            if (run.verdict().stats.eq_rounds >= config.budgets.max_rounds) {
                return run.exhausted("round budget exhausted");
            }
            const Hypothesis& h = learner->hypothesis();
            run.record_hypothesis(h.dfa);
            auto eq = sampled_equivalence(run, h.dfa, pac_sample_count(config.epsilon, config.gamma, h.generation));
            if (eq.timed_out) {
                return run.exhausted(exhausted_reason(run));
            }
            if (!eq.counterexample) {
                break;
            }
            learner->refine(*eq.counterexample);
        }
    } catch (const budget_error& e) {
        return run.exhausted(e.what());
    }

    const Dfa& extracted = learner->hypothesis().dfa;
    auto inclusion = check_inclusion(extracted, spec);
    if (inclusion.holds()) {
        return run.satisfied();
    }
    const Word& w = *inclusion.counterexample;
    if (oracle.membership(w)) {
        return run.counterexample(w);
    }
    run.verdict().stats.spurious_counterexamples += 1;
    run.verdict().spurious_witness = w;
    return run.exhausted("spurious counterexample");
}

Verdict pdv(LanguageOracle& oracle, const Dfa& spec, const WordDistribution& dist, const VerifyConfig& config) {
    Run run(oracle, spec, dist, config);
    const std::uint64_t fixed_samples =
        config.fixed_sample_count ? smc_sample_count(config.epsilon, config.gamma, config.smc_bound) : 0;
    try {
        Learner learner(oracle, run.learner_limits());
        while (true) {
            if (run.verdict().stats.eq_rounds >= config.budgets.max_rounds) {
                return run.exhausted("round budget exhausted");
            }
            if (run.out_of_time()) {
                return run.exhausted("wall-clock budget exhausted");
            }
            const Hypothesis& h = learner.hypothesis();
            run.record_hypothesis(h.dfa);

            auto inclusion = check_inclusion(h.dfa, spec);
            if (!inclusion.holds()) {
                // h accepts w and the spec rejects it: either a real error of
                // the oracle or a word h got wrong.
                const Word& w = *inclusion.counterexample;
                if (oracle.membership(w)) {
                    return run.counterexample(w);
                }
                learner.refine(w);
                continue;
            }

            std::uint64_t samples =
                fixed_samples ? fixed_samples : pac_sample_count(config.epsilon, config.gamma, h.generation);
            auto sampled = smc_inclusion(oracle, h.dfa, run.sampler(), samples, run.deadline(), run.query_limit());
            if (sampled.timed_out) {
                return run.exhausted(exhausted_reason(run));
            }
            if (!sampled.counterexample) {
                return run.satisfied();
            }
            learner.refine(*sampled.counterexample);
        }
    } catch (const budget_error& e) {
        return run.exhausted(e.what());
    }
}

Verdict run_method(Method method, LanguageOracle& oracle, const Dfa& spec, const WordDistribution& dist,
                   const VerifyConfig& config) {
    switch (method) {
        case Method::smc: return smc_check(oracle, spec, dist, config);
        case Method::aamc: return aamc(oracle, spec, dist, config);
        case Method::pdv: return pdv(oracle, spec, dist, config);
    }
    throw contract_error("unhandled method");
}

} // namespace pdv
