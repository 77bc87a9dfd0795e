#include "trimatch/assignment.hpp"
#include "trimatch/simulator.hpp"
#include "trimatch/tripartite.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace trimatch;

Frame random_frame(std::mt19937_64& rng, std::size_t n, double extent) {
    std::uniform_real_distribution<double> u(0.0, extent);
    Frame f(n);
    for (auto& p : f) p = {u(rng), u(rng)};
    return f;
}

// A frame and a jittered copy of it, so that nearest neighbours are meaningful.
std::pair<Frame, Frame> frame_pair(std::size_t n) {
    std::mt19937_64 rng(n);
    const Frame a = random_frame(rng, n, 100.0);
    std::normal_distribution<double> jitter(0.0, 1.0);
    Frame b = a;
    for (auto& p : b) p = {p.x + jitter(rng), p.y + jitter(rng)};
    return {a, b};
}

SimOutput sim(double n0, std::size_t frames) {
    SimConfig cfg;
    cfg.expected_visible = n0;
    cfg.frames = frames;
    cfg.seed = 11;
    return simulate(cfg);
}

void BM_SolveBmcf(benchmark::State& state) {
    const auto [a, b] = frame_pair(static_cast<std::size_t>(state.range(0)));
    const auto cfg = BipartiteConfig::fixed(25.0);
    for (auto _ : state) benchmark::DoNotOptimize(solve_bmcf(a, b, cfg));
}
BENCHMARK(BM_SolveBmcf)->Arg(15)->Arg(50)->Arg(100);

void BM_SolveBmcfFixedD(benchmark::State& state) {
    const auto [a, b] = frame_pair(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(solve_bmcf_fixed_d(a, b, 2));
}
BENCHMARK(BM_SolveBmcfFixedD)->Arg(15)->Arg(50)->Arg(100);

void BM_BuildReducedSpace(benchmark::State& state) {
    const auto [a, b] = frame_pair(50);
    const ReducedSpaceConfig cfg{static_cast<std::size_t>(state.range(0))};
    for (auto _ : state) benchmark::DoNotOptimize(build_reduced_space(a, b, 0, cfg));
}
BENCHMARK(BM_BuildReducedSpace)->DenseRange(0, 3);

void BM_SolveDp(benchmark::State& state) {
    const auto s = sim(15.0, 20);
    const auto& seq = s.visible;
    const auto seeds = bipartite_matchings(seq, BipartiteConfig{});
    std::vector<CandidateSpace> spaces;
    for (std::size_t p = 0; p < seq.pair_count(); ++p) {
        spaces.push_back(build_reduced_space(seq.frame(p), seq.frame(p + 1), seeds[p].disappear_count(), {2}));
    }
    const auto noise = NoiseModel::pooled(1.0, -20.0);
    DpOptions options;
    options.incremental = state.range(0) != 0;
    for (auto _ : state) benchmark::DoNotOptimize(solve_dp(seq, spaces, noise, options));
    state.SetLabel(options.incremental ? "incremental" : "full");
}
BENCHMARK(BM_SolveDp)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_Track(benchmark::State& state) {
    const auto s = sim(15.0, 50);
    TrackerConfig cfg;
    cfg.reduced.delta = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(track(s.visible, cfg));
}
BENCHMARK(BM_Track)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
