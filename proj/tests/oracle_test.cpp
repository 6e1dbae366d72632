#include <gtest/gtest.h>

#include <thread>
#include <vector>

#include "pdv/automata/operations.hpp"
#include "pdv/errors.hpp"
#include "pdv/oracle/language_oracle.hpp"
#include "test_support.hpp"

using namespace pdv;
using pdv::testing::all_words;

TEST(DfaOracle, AnswersLikeTheAutomatonAndCounts) {
    Dfa d = pdv::testing::five_state_dfa();
    DfaOracle oracle(d);
    std::uint64_t n = 0;
    for (const auto& w : all_words(5, 3)) {
        EXPECT_EQ(oracle.membership(w), d.accepts(w));
        EXPECT_EQ(oracle.query_count(), ++n);
    }
    EXPECT_EQ(oracle.alphabet(), d.alphabet());
    EXPECT_NE(oracle.describe().find("5 states"), std::string::npos);
}

TEST(DfaOracle, ForeignLettersAreRejectedWithoutCounting) {
    DfaOracle oracle(Dfa::universal(Alphabet::of_size(2)));
    EXPECT_THROW(oracle.membership({0, 2}), input_error);
    EXPECT_EQ(oracle.query_count(), 0u);
}

TEST(FaultInjectedOracle, IsSymmetricDifference) {
    Dfa base = pdv::testing::five_state_dfa();
    Dfa fault = pdv::testing::abce_star_e();
    FaultInjectedOracle oracle(base, fault);
    Dfa expected = product(base, fault, combine::exclusive);
    for (const auto& w : all_words(5, 5)) ASSERT_EQ(oracle.membership(w), expected.accepts(w));
}

TEST(FaultInjectedOracle, RejectsAlphabetMismatch) {
    EXPECT_THROW(FaultInjectedOracle(Dfa::universal(Alphabet::of_size(2)), Dfa::empty(Alphabet::of_size(3))),
                 input_error);
}

TEST(LanguageOracle, CounterIsExactUnderConcurrency) {
    DfaOracle oracle(pdv::testing::five_state_dfa());
    const auto words = all_words(5, 3);
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&] {
            for (const auto& w : words) oracle.membership(w);
        });
    }
    for (auto& t : threads) t.join();
    EXPECT_EQ(oracle.query_count(), 8 * words.size());
}
