#include "trimatch/errors.hpp"
#include "trimatch/tripartite.hpp"

#include "instances.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

namespace trimatch {
namespace {

constexpr auto D = MatchingVector::kDisappear;

TEST(OracleSpace, TwoByTwoHasSeven) {
    const auto s = oracle::enumerate_space(2, 2);
    EXPECT_EQ(s.size(), 7u);
    EXPECT_EQ(oracle::space_size_formula(2, 2), 7u);
}

TEST(OracleSpace, OneByZeroIsOnlyDisappear) {
    const auto s = oracle::enumerate_space(1, 0);
    ASSERT_EQ(s.size(), 1u);
    EXPECT_EQ(s[0], MatchingVector({D}, 0));
}

TEST(OracleSpace, ThreeByThreeHasThirtyFour) {
    EXPECT_EQ(oracle::space_size_formula(3, 3), 34u);
    EXPECT_EQ(oracle::enumerate_space(3, 3).size(), 34u);
}

TEST(OracleSpace, MatchesFormulaUpToFive) {
    for (std::size_t a = 0; a <= 5; ++a) {
        for (std::size_t b = 0; b <= 5; ++b) {
            EXPECT_EQ(oracle::enumerate_space(a, b).size(), oracle::space_size_formula(a, b)) << a << "x" << b;
        }
    }
}

TEST(OracleSpace, RefusesAboveCap) {
    EXPECT_THROW(oracle::enumerate_space(5, 5, 100), CapacityExceeded);
    EXPECT_THROW(oracle::enumerate_space(9, 9), CapacityExceeded);
}

TEST(OracleChain, TwoFramesSingleObjectMatchesFirstPairArgmax) {
    const FrameSequence seq({{{0, 0}}, {{1, 1}}});
    const NoiseModel noise = NoiseModel::pooled(1.0, -5.0);
    const auto best = oracle::exhaustive_chain_argmax(seq, noise);
    const MatchingVector keep({0}, 1);
    const MatchingVector drop({D}, 1);
    const double s_keep = first_pair_log_likelihood(seq, keep, noise);
    const double s_drop = first_pair_log_likelihood(seq, drop, noise);
    ASSERT_EQ(best.matchings.size(), 1u);
    EXPECT_EQ(best.matchings[0], s_keep >= s_drop ? keep : drop);
    EXPECT_DOUBLE_EQ(best.score, std::max(s_keep, s_drop));
}

TEST(OracleChain, CrossingInstanceRecoversTruth) {
    // Two objects on straight lines that cross between frames 1 and 2.
    const FrameSequence seq({{{0, 0}, {0, 4}}, {{2, 1.5}, {2, 2.5}}, {{4, 1}, {4, 3}}});
    const NoiseModel noise = NoiseModel::pooled(1.0, -50.0);
    const auto best = oracle::exhaustive_chain_argmax(seq, noise);
    ASSERT_EQ(best.matchings.size(), 2u);
    EXPECT_EQ(best.matchings[0], MatchingVector({0, 1}, 2));
    EXPECT_EQ(best.matchings[1], MatchingVector({1, 0}, 2));
}

TEST(OracleChain, ScoreDominatesRandomChoices) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const auto seq = testing::random_sequence(rng, 3, 1, 3);
        const NoiseModel noise = NoiseModel::pooled(1.5, -6.0);
        const auto best = oracle::exhaustive_chain_argmax(seq, noise);
        for (int r = 0; r < 20; ++r) {
            std::vector<MatchingVector> m;
            for (std::size_t k = 0; k < seq.pair_count(); ++k) {
                m.push_back(testing::random_matching(rng, seq.object_count(k), seq.object_count(k + 1)));
            }
            EXPECT_GE(best.score, chain_log_likelihood(seq, m, noise));
        }
    }
}

TEST(OracleBipartite, InfiniteGateKeepsForcedCount) {
    const Frame a{{0, 0}, {10, 0}, {20, 0}};
    const Frame b{{0, 1}};
    const auto m = oracle::exhaustive_bipartite_min(a, b, std::numeric_limits<double>::infinity());
    EXPECT_EQ(m, MatchingVector({0, D, D}, 1));
}

}  // namespace
}  // namespace trimatch
