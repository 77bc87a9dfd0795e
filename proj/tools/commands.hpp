#pragma once

#include "trimatch/config.hpp"
#include "trimatch/simulator.hpp"
#include "trimatch/tripartite.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace trimatch::cli {

namespace fs = std::filesystem;

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kInputError = 2,   // unreadable or malformed data files
    kConfigError = 3,  // invalid configuration or flag values
    kRuntimeError = 4,
};

enum class Method { Bmcf, Tri };

Method parse_method(const std::string& text);
std::string method_name(Method m);

struct TrackOptions {
    fs::path input;
    fs::path output;
    std::optional<fs::path> config;
    Method method = Method::Tri;
    std::optional<std::size_t> delta;
    std::optional<std::string> sigma_mode;
    std::optional<fs::path> diagnostics;  // default: output with .json extension
    std::optional<fs::path> matchings;
    double dt = 1.0;
};

struct SimulateOptions {
    std::optional<fs::path> config;
    fs::path output_dir;
    std::optional<std::uint64_t> seed;
};

struct EvaluateOptions {
    fs::path pred;
    fs::path truth;
    fs::path output;
    std::optional<fs::path> summary;  // default: output with .json extension
    double beta = 1.0;
};

struct ExperimentGrid {
    std::vector<double> n0{15.0};
    std::vector<double> sigmas{1.0};
    std::size_t replicates = 20;
    bool bmcf = true;
    std::vector<std::size_t> deltas{0, 1, 2, 3};
    std::uint64_t seed = 1;
    SimConfig sim;  // N0, sigma and seed are overridden per run
    TrackerConfig tracker;
    unsigned threads = 0;

    void validate() const;
};

/// Keys: N0, sigma (lists), replicates, methods (bmcf, tri), deltas, seed,
/// threads, the simulation keys W, H, w, h, frames, dt, and any tracker key.
ExperimentGrid experiment_grid_from(const KeyValueConfig& kv);

struct ExperimentOptions {
    std::optional<fs::path> config;
    fs::path output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> replicates;
    std::optional<std::string> sigma_mode;
    std::optional<unsigned> threads;
};

/// One (setting, replicate, method) outcome.
struct RunRecord {
    std::size_t setting = 0;
    double n0 = 0.0;
    double sigma = 0.0;
    std::size_t replicate = 0;
    std::uint64_t seed = 0;
    Method method = Method::Bmcf;
    std::size_t delta = 0;
    double f1 = 0.0;
    double precision = 0.0;
    double recall = 0.0;
    double mean_coverage = 0.0;
    double mean_pair_identity = 0.0;
    bool all_pairs_identical = false;
    bool path_identity = false;
    std::uint64_t candidates = 0;
    std::uint64_t triple_evaluations = 0;
    double seconds = 0.0;
};

/// Runs every replicate of every setting; the result order is fixed by
/// (setting, replicate, method) regardless of thread count.
std::vector<RunRecord> run_experiment(const ExperimentGrid& grid);

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs);
void write_timing_csv(std::ostream& out, const std::vector<RunRecord>& runs);
void write_aggregate_csv(std::ostream& out, const ExperimentGrid& grid, const std::vector<RunRecord>& runs);

/// ((d + 1/2) / (d - 1/2))^2, the expected growth of the evaluation count
/// from delta d - 1 to d.
double theoretical_eval_ratio(std::size_t delta);

int cmd_track(const TrackOptions& opt, std::ostream& err);
int cmd_simulate(const SimulateOptions& opt, std::ostream& err);
int cmd_evaluate(const EvaluateOptions& opt, std::ostream& err);
int cmd_experiment(const ExperimentOptions& opt, std::ostream& err);

/// Full command line entry point.
int run(int argc, char** argv);

}  // namespace trimatch::cli
