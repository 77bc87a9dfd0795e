#include "trimatch/errors.hpp"
#include "trimatch/metrics.hpp"
#include "trimatch/simulator.hpp"
#include "trimatch/tripartite.hpp"

#include "instances.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

namespace trimatch {
namespace {

constexpr auto D = MatchingVector::kDisappear;

TEST(FBeta, Examples) {
    EXPECT_DOUBLE_EQ(f_beta(1, 1, 1), 1.0);
    EXPECT_DOUBLE_EQ(f_beta(0.5, 1, 1), 2.0 / 3.0);
    for (double beta : {0.5, 1.0, 2.0, 7.0}) EXPECT_DOUBLE_EQ(f_beta(0.3, 0.3, beta), 0.3);
    EXPECT_DOUBLE_EQ(f_beta(0, 0, 1), 0.0);
    EXPECT_DOUBLE_EQ(f_beta(0, 1, 1), 0.0);
    EXPECT_THROW(f_beta(0.5, 0.5, 0.0), InvalidInput);
    EXPECT_THROW(f_beta(1.5, 0.5, 1.0), InvalidInput);
}

TEST(FBeta, LiesBetweenPrecisionAndRecall) {
    std::mt19937_64 rng(51);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double p = u(rng);
        const double r = u(rng);
        const double b = 0.1 + 5 * u(rng);
        const double f = f_beta(p, r, b);
        EXPECT_GE(f, std::min(p, r) - 1e-12);
        EXPECT_LE(f, std::max(p, r) + 1e-12);
    }
}

TEST(PathAccuracy, IdenticalSets) {
    const TrajectorySet t({Track{{0, 0}, {1, 0}}, Track{{0, 1}}});
    const auto a = path_accuracy(t, t);
    EXPECT_EQ(a.correct, 2u);
    EXPECT_DOUBLE_EQ(a.precision, 1.0);
    EXPECT_DOUBLE_EQ(a.recall, 1.0);
    EXPECT_DOUBLE_EQ(a.f_beta, 1.0);
}

TEST(PathAccuracy, SplitTrackIsWhollyWrong) {
    const TrajectorySet truth({Track{{0, 0}, {1, 0}, {2, 0}}});
    const TrajectorySet pred({Track{{0, 0}, {1, 0}}, Track{{2, 0}}});
    const auto a = path_accuracy(pred, truth);
    EXPECT_EQ(a.correct, 0u);
    EXPECT_EQ(a.predicted, 2u);
    EXPECT_EQ(a.truth, 1u);
    EXPECT_DOUBLE_EQ(a.f_beta, 0.0);
}

TEST(PathAccuracy, EmptySets) {
    const auto both = path_accuracy(TrajectorySet{}, TrajectorySet{});
    EXPECT_DOUBLE_EQ(both.f_beta, 1.0);
    const TrajectorySet one({Track{{0, 0}}});
    EXPECT_DOUBLE_EQ(path_accuracy(TrajectorySet{}, one).f_beta, 0.0);
    EXPECT_DOUBLE_EQ(path_accuracy(one, TrajectorySet{}).f_beta, 0.0);
}

TEST(PathAccuracy, AgreesWithSetIntersectionOnBipartiteErrors) {
    std::size_t checked = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SimConfig cfg;
        cfg.seed = seed;
        cfg.sigma = 4.0;
        cfg.expected_visible = 40;
        cfg.frames = 20;
        const auto sim = simulate(cfg);
        const auto pred_m = bipartite_matchings(sim.visible, BipartiteConfig{});
        const auto pred = assemble_trajectories(sim.visible, pred_m);
        const std::set<Track> p(pred.tracks().begin(), pred.tracks().end());
        const std::set<Track> t(sim.truth_tracks.tracks().begin(), sim.truth_tracks.tracks().end());
        std::size_t common = 0;
        for (const auto& track : p) common += t.count(track);
        const auto a = path_accuracy(pred, sim.truth_tracks);
        EXPECT_EQ(a.correct, common);
        EXPECT_DOUBLE_EQ(a.precision, double(common) / double(p.size()));
        EXPECT_DOUBLE_EQ(a.recall, double(common) / double(t.size()));
        if (common < t.size()) ++checked;
    }
    EXPECT_GT(checked, 0u) << "no replicate produced a bipartite error";
}

TEST(CumulativeAccuracy, AllCorrectIsConstantOne) {
    std::mt19937_64 rng(52);
    const auto seq = testing::random_sequence(rng, 6, 1, 4);
    std::vector<MatchingVector> m;
    for (std::size_t k = 0; k < 5; ++k) m.push_back(testing::random_matching(rng, seq.object_count(k), seq.object_count(k + 1)));
    const auto series = cumulative_path_accuracy(seq, m, m);
    ASSERT_EQ(series.size(), 5u);
    for (const auto& s : series) EXPECT_DOUBLE_EQ(s.f_beta, 1.0);
}

TEST(CumulativeAccuracy, EarlySwapPersists) {
    const FrameSequence seq({{{0, 0}, {0, 1}, {0, 2}}, {{1, 0}, {1, 1}, {1, 2}}, {{2, 0}, {2, 1}, {2, 2}},
                             {{3, 0}, {3, 1}, {3, 2}}});
    const MatchingVector id({0, 1, 2}, 3);
    const std::vector<MatchingVector> truth(3, id);
    std::vector<MatchingVector> pred = truth;
    pred[0] = MatchingVector({1, 0, 2}, 3);
    const auto series = cumulative_path_accuracy(seq, pred, truth);
    ASSERT_EQ(series.size(), 3u);
    for (const auto& s : series) {
        EXPECT_LT(s.f_beta, 1.0);
        EXPECT_DOUBLE_EQ(s.precision, 1.0 / 3.0);
    }
    const auto pairs = pair_accuracy(seq, pred, truth);
    EXPECT_DOUBLE_EQ(pairs[0], 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(pairs[1], 1.0);
    EXPECT_DOUBLE_EQ(pairs[2], 1.0);
}

TEST(Identity, Examples) {
    EXPECT_TRUE(pair_identity(MatchingVector({0, D}, 1), MatchingVector({0, D}, 1)));
    EXPECT_FALSE(pair_identity(MatchingVector({0, D}, 1), MatchingVector({D, 0}, 1)));
    EXPECT_TRUE(pair_identity(MatchingVector({}, 0), MatchingVector({}, 0)));
    EXPECT_TRUE(path_identity(TrajectorySet{}, TrajectorySet{}));
}

TEST(Coverage, Examples) {
    const Frame a{{0, 0}, {1, 0}};
    const Frame b{{0.2, 0}, {0.8, 0}};
    const auto bmcf = solve_bmcf(a, b, BipartiteConfig::ungated());
    const MatchingVector truth({1, 0}, 2);
    // A singleton space holding the bipartite answer covers exactly when it is right.
    const CandidateSpace singleton({bmcf}, 2, 2);
    EXPECT_EQ(coverage(singleton, truth), pair_identity(bmcf, truth));
    EXPECT_TRUE(coverage(build_reduced_space(a, b, 0, {0}), truth));
}

TEST(ImprovementRatio, Examples) {
    const auto r = improvement_ratio(0.2, 0.4, 0.5);
    ASSERT_TRUE(r);
    EXPECT_DOUBLE_EQ(*r, 0.5);
    EXPECT_FALSE(improvement_ratio(0.4, 0.4, 0.5));
    const std::vector<double> f{0.2, 0.4, 0.5, 0.5};
    const auto series = improvement_ratios(f);
    ASSERT_EQ(series.size(), 2u);
    EXPECT_DOUBLE_EQ(*series[0], 0.5);
    EXPECT_DOUBLE_EQ(*series[1], 0.0);
}

TEST(Evaluate, PairIdentityEverywhereImpliesPathIdentity) {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 50; ++trial) {
        const auto seq = testing::random_sequence(rng, 5, 0, 4);
        std::vector<MatchingVector> truth;
        std::vector<MatchingVector> pred;
        for (std::size_t k = 0; k < 4; ++k) {
            truth.push_back(testing::random_matching(rng, seq.object_count(k), seq.object_count(k + 1)));
            pred.push_back(trial % 2 ? truth.back()
                                     : testing::random_matching(rng, seq.object_count(k), seq.object_count(k + 1)));
        }
        const auto r = evaluate(seq, pred, truth);
        if (r.mean_pair_identity() == 1.0) EXPECT_TRUE(r.path_identity);
        if (r.path_identity) EXPECT_DOUBLE_EQ(r.whole.f_beta, 1.0);
        for (double a : r.pair_accuracy) {
            EXPECT_GE(a, 0.0);
            EXPECT_LE(a, 1.0);
        }
    }
}

TEST(Evaluate, ReportCsvLayout) {
    const FrameSequence seq({{{0, 0}}, {{1, 0}}, {{2, 0}}});
    const std::vector<MatchingVector> m(2, MatchingVector({0}, 1));
    const std::vector<CandidateSpace> spaces(2, build_full_space(1, 1));
    const auto report = evaluate(seq, m, m, 1.0, spaces);
    ASSERT_TRUE(report.mean_coverage());
    EXPECT_DOUBLE_EQ(*report.mean_coverage(), 1.0);
    std::ostringstream out;
    write_report_csv(out, report);
    EXPECT_EQ(out.str(),
              "pair,pair_accuracy,pair_identity,coverage,cumulative_precision,cumulative_recall,cumulative_f_beta\n"
              "0,1,1,1,1,1,1\n"
              "1,1,1,1,1,1,1\n");
    std::ostringstream bare;
    write_report_csv(bare, evaluate(seq, m, m));
    EXPECT_NE(bare.str().find("\n0,1,1,,1,1,1\n"), std::string::npos);
}

}  // namespace
}  // namespace trimatch
