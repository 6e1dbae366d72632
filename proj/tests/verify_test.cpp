#include <gtest/gtest.h>

#include <cmath>

#include "pdv/automata/generate.hpp"
#include "pdv/automata/operations.hpp"
#include "pdv/errors.hpp"
#include "pdv/lstar/pac.hpp"
#include "pdv/verify/verify.hpp"
#include "test_support.hpp"

using namespace pdv;
using pdv::testing::make_dfa;
using pdv::testing::word;

namespace {

// Words over {a, b} with an even number of b's.
Dfa even_b() { return make_dfa({"a", "b"}, 2, 0, {0}, {{0, "a", 0}, {0, "b", 1}, {1, "a", 1}, {1, "b", 0}}); }

// Words over {a, b} without the factor "bb".
Dfa no_bb() {
    return make_dfa({"a", "b"}, 3, 0, {0, 1},
                    {{0, "a", 0}, {0, "b", 1}, {1, "a", 0}, {1, "b", 2}, {2, "a", 2}, {2, "b", 2}});
}

VerifyConfig loose(std::uint64_t seed = 0) {
    VerifyConfig c;
    c.epsilon = 0.05;
    c.gamma = 0.05;
    c.seed = seed;
    return c;
}

void expect_sound(const Verdict& v, const Dfa& oracle_language, const Dfa& spec) {
    if (v.found_counterexample()) {
        ASSERT_TRUE(v.counterexample.has_value());
        EXPECT_TRUE(v.confirmed);
        EXPECT_TRUE(oracle_language.accepts(*v.counterexample));
        EXPECT_FALSE(spec.accepts(*v.counterexample));
        EXPECT_EQ(v.stats.counterexample_length, v.counterexample->size());
    } else {
        EXPECT_FALSE(v.counterexample.has_value());
    }
}

} // namespace

TEST(SmcSampleCount, ClosedForms) {
    // ln(40) / (2 * 0.05^2) = 737.78
    EXPECT_EQ(smc_sample_count(0.05, 0.05), 738u);
    EXPECT_EQ(smc_sample_count(0.05, 0.05, SmcBound::hoeffding), 738u);
    EXPECT_EQ(smc_sample_count(5e-4, 5e-4), 16'588'100u);
    // ln(2 / 0.1) / (2 * 0.01^2) = 14978.66 versus ln(2 / 0.01) / (2 * 0.1^2) = 264.92
    EXPECT_EQ(smc_sample_count(0.1, 0.01, SmcBound::paper), 14979u);
    EXPECT_EQ(smc_sample_count(0.1, 0.01, SmcBound::hoeffding), 265u);
    EXPECT_EQ(smc_sample_count(0.01, 0.1, SmcBound::paper), 265u);
    EXPECT_THROW(smc_sample_count(0.0, 0.5), input_error);
    EXPECT_THROW(smc_sample_count(0.5, 1.0), input_error);
}

TEST(SmcSampleCount, MonotoneInBothTolerances) {
    for (double e = 0.01; e < 0.5; e += 0.01) {
        EXPECT_GE(smc_sample_count(e, 0.05), smc_sample_count(e + 0.01, 0.05));
        EXPECT_GE(smc_sample_count(0.05, e), smc_sample_count(0.05, e + 0.01));
    }
}

TEST(MethodNames, RoundTrip) {
    for (Method m : {Method::smc, Method::aamc, Method::pdv}) EXPECT_EQ(parse_method(to_string(m)), m);
    EXPECT_THROW(parse_method("lstar"), input_error);
    EXPECT_STREQ(to_string(Outcome::counterexample_found), "counterexample");
    EXPECT_STREQ(to_string(Outcome::property_satisfied), "satisfied");
    EXPECT_STREQ(to_string(Outcome::budget_exhausted), "budget_exhausted");
}

TEST(SmcInclusion, FindsWordsOutsideTheHypothesis) {
    Dfa d = even_b();
    DfaOracle oracle(d);
    WordSampler sampler(WordDistribution::uniform(2), 4);
    auto r = smc_inclusion(oracle, complement(d), sampler, 1000);
    ASSERT_TRUE(r.counterexample.has_value());
    EXPECT_FALSE(r.timed_out);
    EXPECT_TRUE(d.accepts(*r.counterexample));
    EXPECT_EQ(oracle.query_count(), sampler.sampled());
}

TEST(SmcInclusion, QueriesOnlyWhereTheHypothesisRejects) {
    Dfa d = even_b();
    DfaOracle oracle(d);
    WordSampler sampler(WordDistribution::uniform(2), 9);
    WordSampler mirror(WordDistribution::uniform(2), 9);
    auto r = smc_inclusion(oracle, d, sampler, 500);
    EXPECT_TRUE(r.holds());
    std::uint64_t rejected = 0;
    for (int i = 0; i < 500; ++i) rejected += !d.accepts(mirror());
    EXPECT_EQ(oracle.query_count(), rejected);
}

TEST(SmcInclusion, HonoursDeadlineAndQueryCap) {
    DfaOracle oracle(even_b());
    WordSampler sampler(WordDistribution::uniform(2), 1);
    EXPECT_TRUE(smc_inclusion(oracle, even_b(), sampler, 10, std::chrono::steady_clock::now()).timed_out);
    EXPECT_TRUE(smc_inclusion(oracle, even_b(), sampler, 10, std::nullopt, 0).timed_out);
    EXPECT_THROW(smc_inclusion(oracle, even_b(), sampler, 0), input_error);
}

TEST(SmcCheck, FindsAndConfirmsAViolation) {
    DfaOracle oracle(even_b());
    Verdict v = smc_check(oracle, no_bb(), WordDistribution::uniform(2), loose());
    ASSERT_TRUE(v.found_counterexample());
    expect_sound(v, even_b(), no_bb());
    // One query per spec-rejected sample plus the confirming re-check.
    EXPECT_LE(v.stats.membership_queries, v.stats.sampled_words + 1);
    EXPECT_EQ(v.stats.membership_queries, oracle.query_count());
}

TEST(SmcCheck, SatisfiedAfterTheFullSampleBudget) {
    DfaOracle oracle(even_b());
    Verdict v = smc_check(oracle, Dfa::universal(even_b().alphabet()), WordDistribution::uniform(2), loose());
    EXPECT_EQ(v.outcome, Outcome::property_satisfied);
    EXPECT_EQ(v.stats.sampled_words, 738u);
    EXPECT_EQ(v.stats.membership_queries, 0u);
}

TEST(Pdv, ShortestViolationFromTheFirstHypothesis) {
    DfaOracle oracle(even_b());
    Verdict v = pdv::pdv(oracle, no_bb(), WordDistribution::uniform(2), loose());
    ASSERT_TRUE(v.found_counterexample());
    EXPECT_EQ(*v.counterexample, word(even_b().alphabet(), "bb"));
    EXPECT_EQ(v.stats.eq_rounds, 1u);
    EXPECT_EQ(v.stats.sampled_words, 0u);
    ASSERT_TRUE(v.hypothesis.has_value());
    EXPECT_TRUE(language_equal(*v.hypothesis, even_b()));
}

TEST(Pdv, SampledRefinementExposesTheViolation) {
    // System: words containing "aa". Property: no factor "aab".
    Dfa system = make_dfa({"a", "b"}, 3, 0, {2},
                          {{0, "a", 1}, {0, "b", 0}, {1, "a", 2}, {1, "b", 0}, {2, "a", 2}, {2, "b", 2}});
    Dfa spec = make_dfa({"a", "b"}, 4, 0, {0, 1, 2},
                        {{0, "a", 1}, {0, "b", 0}, {1, "a", 2}, {1, "b", 0}, {2, "a", 2}, {2, "b", 3},
                         {3, "a", 3}, {3, "b", 3}});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        DfaOracle oracle(system);
        Verdict v = pdv::pdv(oracle, spec, WordDistribution::uniform(2), loose(seed));
        ASSERT_TRUE(v.found_counterexample()) << v.reason;
        expect_sound(v, system, spec);
        // The first hypothesis is empty, so a sampled round must come first.
        EXPECT_EQ(v.stats.hypothesis_sizes.front(), 1u);
        EXPECT_GT(v.stats.sampled_words, 0u);
        EXPECT_EQ(*v.counterexample, word(system.alphabet(), "aab"));
    }
}

TEST(Pdv, ShortWitnessForTheInjectedLoopFault) {
    Dfa fault = pdv::testing::abce_star_e();
    const Alphabet& sigma = fault.alphabet();
    Dfa spec = complement(fault);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        FaultInjectedOracle oracle(Dfa::empty(sigma), fault);
        Verdict v = pdv::pdv(oracle, spec, WordDistribution::uniform(5), loose(seed));
        ASSERT_TRUE(v.found_counterexample()) << v.reason;
        expect_sound(v, fault, spec);
        EXPECT_LE(v.counterexample->size(), 6u);
    }
}

TEST(Pdv, NeverRefutesASpecContainingTheSystem) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Alphabet sigma = Alphabet::of_size(2 + seed % 3);
        Dfa d = random_dfa(12, sigma, seed);
        for (const Dfa& spec : derive_specs(d, 2, seed)) {
            DfaOracle oracle(d);
            Verdict v = pdv::pdv(oracle, spec, WordDistribution::uniform(sigma.size()), loose(seed));
            EXPECT_EQ(v.outcome, Outcome::property_satisfied) << "seed " << seed << ": " << v.reason;
        }
    }
}

TEST(Pdv, HypothesisSizesNeverShrinkAndStatsAddUp) {
    Alphabet sigma = Alphabet::of_size(3);
    Dfa d = minimize(random_dfa(20, sigma, 77));
    DfaOracle oracle(d);
    Verdict v = pdv::pdv(oracle, Dfa::universal(sigma), WordDistribution::uniform(3), loose(1));
    EXPECT_EQ(v.outcome, Outcome::property_satisfied);
    ASSERT_FALSE(v.stats.hypothesis_sizes.empty());
    for (std::size_t i = 1; i < v.stats.hypothesis_sizes.size(); ++i) {
        EXPECT_LT(v.stats.hypothesis_sizes[i - 1], v.stats.hypothesis_sizes[i]);
    }
    EXPECT_EQ(v.stats.eq_rounds, v.stats.hypothesis_sizes.size());
    EXPECT_EQ(v.stats.membership_queries, oracle.query_count());
    EXPECT_EQ(v.hypothesis->num_states(), v.stats.hypothesis_sizes.back());
}

TEST(Pdv, FixedSampleCountMode) {
    DfaOracle oracle(even_b());
    VerifyConfig c = loose();
    c.fixed_sample_count = true;
    Verdict v = pdv::pdv(oracle, Dfa::universal(even_b().alphabet()), WordDistribution::uniform(2), c);
    EXPECT_EQ(v.outcome, Outcome::property_satisfied);
    EXPECT_EQ(v.stats.sampled_words % 738u, 0u);
    EXPECT_GE(v.stats.sampled_words, 738u);
}

TEST(Aamc, ExtractsThenChecks) {
    DfaOracle oracle(even_b());
    Verdict v = aamc(oracle, no_bb(), WordDistribution::uniform(2), loose());
    ASSERT_TRUE(v.found_counterexample());
    expect_sound(v, even_b(), no_bb());
    EXPECT_TRUE(language_equal(*v.hypothesis, even_b()));
    EXPECT_GE(v.stats.sampled_words, pac_sample_count(0.05, 0.05, 0));
}

TEST(Verify, AllMethodsSoundOnInjectedFaults) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Alphabet sigma = Alphabet::of_size(2 + seed % 3);
        Dfa base = random_dfa(10, sigma, seed);
        Dfa fault = random_dfa(4, sigma, seed + 1000);
        Dfa language = product(base, fault, combine::exclusive);
        auto specs = derive_specs(base, 1, seed);
        if (specs.empty()) continue;
        for (Method m : {Method::smc, Method::aamc, Method::pdv}) {
            FaultInjectedOracle oracle(base, fault);
            Verdict v = run_method(m, oracle, specs[0], WordDistribution::uniform(sigma.size()), loose(seed));
            expect_sound(v, language, specs[0]);
        }
    }
}

TEST(Verify, DeterministicInTheSeed) {
    Alphabet sigma = Alphabet::of_size(3);
    Dfa base = random_dfa(15, sigma, 5);
    Dfa fault = random_dfa(5, sigma, 6);
    Dfa spec = derive_specs(base, 1, 5).at(0);
    for (Method m : {Method::smc, Method::aamc, Method::pdv}) {
        FaultInjectedOracle first(base, fault), second(base, fault);
        Verdict a = run_method(m, first, spec, WordDistribution::uniform(3), loose(42));
        Verdict b = run_method(m, second, spec, WordDistribution::uniform(3), loose(42));
        EXPECT_EQ(a.outcome, b.outcome);
        EXPECT_EQ(a.counterexample, b.counterexample);
        EXPECT_EQ(a.stats.membership_queries, b.stats.membership_queries);
        EXPECT_EQ(a.stats.sampled_words, b.stats.sampled_words);
        EXPECT_EQ(a.stats.hypothesis_sizes, b.stats.hypothesis_sizes);
    }
}

TEST(Verify, BudgetsEndRunsWithAReason) {
    Alphabet sigma = Alphabet::of_size(4);
    Dfa d = minimize(random_dfa(30, sigma, 8));
    Dfa universal = Dfa::universal(sigma);
    auto dist = WordDistribution::uniform(4);
    {
        VerifyConfig c = loose();
        c.budgets.max_queries = 5;
        for (Method m : {Method::aamc, Method::pdv}) {
            DfaOracle oracle(d);
            Verdict v = run_method(m, oracle, universal, dist, c);
            EXPECT_EQ(v.outcome, Outcome::budget_exhausted);
            EXPECT_FALSE(v.reason.empty());
        }
    }
    {
        VerifyConfig c = loose();
        c.budgets.max_rounds = 0;
        DfaOracle oracle(d);
        Verdict v = pdv::pdv(oracle, universal, dist, c);
        EXPECT_EQ(v.outcome, Outcome::budget_exhausted);
        EXPECT_EQ(v.reason, "round budget exhausted");
    }
    {
        VerifyConfig c = loose();
        c.budgets.wall_clock = std::chrono::duration<double>(0.0);
        for (Method m : {Method::smc, Method::aamc, Method::pdv}) {
            DfaOracle oracle(d);
            Verdict v = run_method(m, oracle, universal, dist, c);
            EXPECT_EQ(v.outcome, Outcome::budget_exhausted) << to_string(m);
        }
    }
}

TEST(Verify, RejectsMismatchedInputs) {
    DfaOracle oracle(even_b());
    EXPECT_THROW(pdv::pdv(oracle, Dfa::universal(Alphabet::of_size(3)), WordDistribution::uniform(2), loose()),
                 input_error);
    EXPECT_THROW(smc_check(oracle, no_bb(), WordDistribution::uniform(3), loose()), input_error);
}
