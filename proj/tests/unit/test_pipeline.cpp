#include "trimatch/errors.hpp"
#include "trimatch/simulator.hpp"
#include "trimatch/tripartite.hpp"

#include "instances.hpp"

#include <gtest/gtest.h>

namespace trimatch {
namespace {

SimOutput small_simulation(std::uint64_t seed, double n0 = 8.0) {
    SimConfig cfg;
    cfg.region_width = 600;
    cfg.region_height = 600;
    cfg.window_width = 200;
    cfg.window_height = 200;
    cfg.expected_visible = n0;
    cfg.frames = 12;
    cfg.seed = seed;
    return simulate(cfg);
}

TEST(Track, ResultIsConsistent) {
    const auto sim = small_simulation(1);
    TrackerConfig cfg;
    cfg.reduced.delta = 1;
    const auto res = track(sim.visible, cfg);
    const auto& seq = sim.visible;
    ASSERT_EQ(res.matchings.size(), seq.pair_count());
    ASSERT_EQ(res.spaces.size(), seq.pair_count());
    EXPECT_EQ(res.diagnostics.d_star.size(), seq.pair_count());
    EXPECT_EQ(res.diagnostics.space_sizes.size(), seq.pair_count());
    EXPECT_EQ(res.diagnostics.sigmas.size(), seq.pair_count());
    for (std::size_t k = 0; k < seq.pair_count(); ++k) {
        EXPECT_TRUE(res.spaces[k].contains(res.matchings[k]));
        EXPECT_TRUE(res.spaces[k].contains(res.bipartite[k]));
        EXPECT_EQ(res.bipartite[k].disappear_count(), res.diagnostics.d_star[k]);
    }
    EXPECT_EQ(res.trajectories, assemble_trajectories(seq, res.matchings));
    EXPECT_NEAR(chain_log_likelihood(seq, res.matchings, res.noise), res.diagnostics.score, 1e-6);
    EXPECT_DOUBLE_EQ(res.diagnostics.lambda_event,
                     event_penalty_at_gate(res.diagnostics.gate_cost, res.diagnostics.pooled_sigma, seq.dt()));
}

TEST(Track, ScoreNeverBelowBipartiteSeed) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto sim = small_simulation(seed, 12.0);
        const auto res = track(sim.visible, TrackerConfig{});
        EXPECT_GE(res.diagnostics.score, chain_log_likelihood(sim.visible, res.bipartite, res.noise) - 1e-9);
    }
}

TEST(Track, FixedSigmaAndPenalty) {
    const auto sim = small_simulation(2);
    TrackerConfig cfg;
    cfg.sigma.fixed = 3.0;
    cfg.lambda_event = -12.0;
    const auto res = track(sim.visible, cfg);
    for (double s : res.diagnostics.sigmas) EXPECT_DOUBLE_EQ(s, 3.0);
    EXPECT_DOUBLE_EQ(res.diagnostics.lambda_event, -12.0);
}

TEST(Track, AutomaticPenaltyNeedsFiniteGate) {
    const auto sim = small_simulation(3);
    TrackerConfig cfg;
    cfg.bipartite = BipartiteConfig::ungated();
    EXPECT_THROW(track(sim.visible, cfg), InvalidConfiguration);
    cfg.lambda_event = -5.0;
    EXPECT_NO_THROW(track(sim.visible, cfg));
}

TEST(Track, SpaceCapIsEnforced) {
    const auto sim = small_simulation(4, 20.0);
    TrackerConfig cfg;
    cfg.space_cap = 10;
    EXPECT_THROW(track(sim.visible, cfg), CapacityExceeded);
}

TEST(Track, RecoversCrossingPaths) {
    const FrameSequence seq({{{0, 0}, {0, 4}}, {{2, 1.5}, {2, 2.5}}, {{4, 1}, {4, 3}}});
    TrackerConfig cfg;
    cfg.bipartite = BipartiteConfig::fixed(1e6);
    cfg.sigma.fixed = 1.0;
    cfg.reduced.delta = 1;
    const auto res = track(seq, cfg);
    EXPECT_EQ(res.bipartite[1], MatchingVector({0, 1}, 2));
    EXPECT_EQ(res.matchings[1], MatchingVector({1, 0}, 2));
}

TEST(Track, RejectsShortSequencesAndBadConfig) {
    EXPECT_THROW(track(FrameSequence({{{0, 0}}}), TrackerConfig{}), InvalidInput);
    TrackerConfig cfg;
    cfg.sigma_floor = 0.0;
    EXPECT_THROW(cfg.validate(), InvalidConfiguration);
    TrackerConfig fixed;
    fixed.sigma.fixed = -1.0;
    EXPECT_THROW(fixed.validate(), InvalidConfiguration);
}

TEST(Track, HandlesEmptyFrames) {
    const FrameSequence seq({{{0, 0}}, {}, {{1, 1}, {2, 2}}, {{1.5, 1}, {2.5, 2}}});
    TrackerConfig cfg;
    cfg.lambda_event = -4.0;
    const auto res = track(seq, cfg);
    EXPECT_NO_THROW(res.trajectories.validate_against(seq));
}

}  // namespace
}  // namespace trimatch
