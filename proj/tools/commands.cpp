#include "commands.hpp"

#include "trimatch/errors.hpp"
#include "trimatch/io.hpp"
#include "trimatch/metrics.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace trimatch::cli {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream open_output(const fs::path& path) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_json(const fs::path& path, const json& j) {
    auto out = open_output(path);
    out << j.dump(2) << '\n';
}

KeyValueConfig load_config(const fs::path& path) {
    try {
        return KeyValueConfig::load(path);
    } catch (const ParseError& e) {
        throw InvalidConfiguration(path.string() + ": " + e.what());
    }
}

template <class F>
auto with_path(const fs::path& path, F&& read) {
    try {
        return read();
    } catch (const ParseError& e) {
        throw ParseError(0, path.string() + ": " + e.what());
    }
}

template <class F>
int guarded(std::ostream& err, F&& body) {
    try {
        body();
        return kOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const InvalidConfiguration& e) {
        err << "configuration error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InvalidInput& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kRuntimeError;
    }
}

fs::path sidecar(const std::optional<fs::path>& given, const fs::path& output) {
    if (given) return *given;
    fs::path p = output;
    return p.replace_extension(".json");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Stats {
    double mean = 0.0;
    double sd = 0.0;
};

Stats stats(const std::vector<double>& xs) {
    Stats s;
    if (xs.empty()) return s;
    s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - s.mean) * (x - s.mean);
        s.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return s;
}

}  // namespace

Method parse_method(const std::string& text) {
    if (text == "bmcf") return Method::Bmcf;
    if (text == "tri") return Method::Tri;
    throw InvalidConfiguration("unknown method '" + text + "' (expected bmcf or tri)");
}

std::string method_name(Method m) { return m == Method::Bmcf ? "bmcf" : "tri"; }

double theoretical_eval_ratio(std::size_t delta) {
    const double d = static_cast<double>(delta);
    const double r = (d + 0.5) / (d - 0.5);
    return r * r;
}

// ---------------------------------------------------------------------------
// track

int cmd_track(const TrackOptions& opt, std::ostream& err) {
    return guarded(err, [&] {
        TrackerConfig cfg;
        if (opt.config) {
            const auto kv = load_config(*opt.config);
            cfg = tracker_config_from(kv);
            kv.reject_unused();
        }
        if (opt.delta) cfg.reduced.delta = *opt.delta;
        if (opt.sigma_mode) cfg.sigma = parse_sigma_setting(*opt.sigma_mode);
        cfg.validate();

        const FrameSequence seq = with_path(opt.input, [&] { return read_detections(opt.input, opt.dt); });
        if (seq.frame_count() < 2) throw InvalidInput(opt.input.string() + ": tracking needs at least two frames");

        json diag;
        diag["method"] = method_name(opt.method);
        diag["frames"] = seq.frame_count();
        diag["detections"] = seq.detection_count();
        std::vector<MatchingVector> matchings;
        TrajectorySet tracks;
        if (opt.method == Method::Bmcf) {
            const double gate = resolve_gate_cost(seq, cfg.bipartite);
            matchings = bipartite_matchings(seq, BipartiteConfig::fixed(gate));
            tracks = assemble_trajectories(seq, matchings);
            std::vector<std::size_t> d_star;
            for (const auto& m : matchings) d_star.push_back(m.disappear_count());
            diag["gate_cost"] = number(gate);
            diag["d_star"] = d_star;
        } else {
            TrackResult result = track(seq, cfg);
            const auto& d = result.diagnostics;
            diag["delta"] = cfg.reduced.delta;
            diag["gate_cost"] = number(d.gate_cost);
            diag["lambda_event"] = d.lambda_event;
            diag["d_star"] = d.d_star;
            diag["space_sizes"] = d.space_sizes;
            diag["sigmas"] = d.sigmas;
            diag["pooled_sigma"] = d.pooled_sigma;
            diag["sigma_fallback"] = d.sigma_fallback;
            diag["triple_evaluations"] = d.triple_evaluations;
            diag["score"] = number(d.score);
            matchings = std::move(result.matchings);
            tracks = std::move(result.trajectories);
        }
        diag["tracks"] = tracks.size();

        {
            auto out = open_output(opt.output);
            write_tracks(out, seq, tracks);
        }
        write_json(sidecar(opt.diagnostics, opt.output), diag);
        if (opt.matchings) {
            auto out = open_output(*opt.matchings);
            write_matchings(out, matchings);
        }
    });
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(const SimulateOptions& opt, std::ostream& err) {
    return guarded(err, [&] {
        SimConfig cfg;
        if (opt.config) {
            const auto kv = load_config(*opt.config);
            cfg = sim_config_from(kv);
            kv.reject_unused();
        }
        if (opt.seed) cfg.seed = *opt.seed;
        cfg.validate();
        const SimOutput sim = simulate(cfg);

        fs::create_directories(opt.output_dir);
        {
            auto out = open_output(opt.output_dir / "detections.csv");
            write_detections(out, sim.visible);
        }
        {
            auto out = open_output(opt.output_dir / "truth.csv");
            write_tracks(out, sim.visible, sim.truth_tracks);
        }
        {
            auto out = open_output(opt.output_dir / "truth_matchings.txt");
            write_matchings(out, sim.truth_matchings);
        }
        json meta;
        meta["W"] = cfg.region_width;
        meta["H"] = cfg.region_height;
        meta["w"] = cfg.window_width;
        meta["h"] = cfg.window_height;
        meta["N0"] = cfg.expected_visible;
        meta["sigma"] = cfg.sigma;
        meta["frames"] = cfg.frames;
        meta["dt"] = cfg.dt;
        meta["seed"] = cfg.seed;
        meta["seeded_cells"] = cfg.seeded_cells();
        meta["visible_counts"] = sim.visible.counts();
        meta["truth_tracks"] = sim.truth_tracks.size();
        write_json(opt.output_dir / "metadata.json", meta);
    });
}

// ---------------------------------------------------------------------------
// evaluate

int cmd_evaluate(const EvaluateOptions& opt, std::ostream& err) {
    return guarded(err, [&] {
        if (!(opt.beta > 0.0)) throw InvalidConfiguration("beta must be positive");
        const TrackFile truth_file = with_path(opt.truth, [&] { return read_tracks(opt.truth); });
        const TrackFile pred_file = with_path(opt.pred, [&] { return read_tracks(opt.pred); });
        const FrameSequence seq = detections_from_track_rows(truth_file.rows, truth_file.declared_frames);
        if (seq.frame_count() < 2) throw InvalidInput(opt.truth.string() + ": evaluation needs at least two frames");
        if (pred_file.declared_frames != 0 && pred_file.declared_frames != seq.frame_count()) {
            throw InvalidInput(opt.pred.string() + ": declares " + std::to_string(pred_file.declared_frames) +
                               " frames, truth has " + std::to_string(seq.frame_count()));
        }
        for (std::size_t k = 0; k < seq.frame_count(); ++k) {
            const bool in_pred = std::any_of(pred_file.rows.begin(), pred_file.rows.end(),
                                             [k](const TrackRow& r) { return r.frame == k; });
            if (!in_pred && seq.object_count(k) > 0) {
                throw InvalidInput(opt.pred.string() + ": frame " + std::to_string(k) + " is missing");
            }
        }
        const TrajectorySet truth = tracks_from_rows(seq, truth_file.rows);
        TrajectorySet pred;
        try {
            pred = tracks_from_rows(seq, pred_file.rows);
        } catch (const InvalidInput& e) {
            throw InvalidInput(opt.pred.string() + ": " + e.what());
        }
        const auto pred_m = trajectories_to_matchings(seq, pred);
        const auto truth_m = trajectories_to_matchings(seq, truth);
        const EvalReport report = evaluate(seq, pred_m, truth_m, opt.beta);

        {
            auto out = open_output(opt.output);
            write_report_csv(out, report);
        }
        json summary;
        summary["beta"] = report.beta;
        summary["frames"] = seq.frame_count();
        summary["precision"] = report.whole.precision;
        summary["recall"] = report.whole.recall;
        summary["f_beta"] = report.whole.f_beta;
        summary["correct_paths"] = report.whole.correct;
        summary["predicted_paths"] = report.whole.predicted;
        summary["truth_paths"] = report.whole.truth;
        summary["path_identity"] = report.path_identity;
        summary["mean_pair_identity"] = report.mean_pair_identity();
        summary["mean_pair_accuracy"] =
            std::accumulate(report.pair_accuracy.begin(), report.pair_accuracy.end(), 0.0) /
            static_cast<double>(report.pair_accuracy.size());
        write_json(sidecar(opt.summary, opt.output), summary);
    });
}

// ---------------------------------------------------------------------------
// experiment

void ExperimentGrid::validate() const {
    if (n0.empty() || sigmas.empty()) throw InvalidConfiguration("N0 and sigma lists must not be empty");
    if (replicates == 0) throw InvalidConfiguration("replicates must be positive");
    if (!bmcf && deltas.empty()) throw InvalidConfiguration("no method selected");
    for (double n : n0) {
        SimConfig c = sim;
        c.expected_visible = n;
        c.validate();
    }
    for (double s : sigmas) {
        SimConfig c = sim;
        c.sigma = s;
        c.validate();
    }
    tracker.validate();
}

ExperimentGrid experiment_grid_from(const KeyValueConfig& kv) {
    ExperimentGrid g;
    if (auto v = kv.get_double_list("N0")) g.n0 = *v;
    if (auto v = kv.get_double_list("sigma")) g.sigmas = *v;
    if (auto v = kv.get_unsigned("replicates")) g.replicates = static_cast<std::size_t>(*v);
    bool tri = true;
    if (auto v = kv.get_list("methods")) {
        g.bmcf = false;
        tri = false;
        for (const auto& m : *v) (parse_method(m) == Method::Bmcf ? g.bmcf : tri) = true;
    }
    if (auto v = kv.get_unsigned_list("deltas")) g.deltas.assign(v->begin(), v->end());
    if (!tri) g.deltas.clear();
    if (auto v = kv.get_unsigned("seed")) g.seed = *v;
    if (auto v = kv.get_unsigned("threads")) g.threads = static_cast<unsigned>(*v);
    if (auto v = kv.get_double("W")) g.sim.region_width = *v;
    if (auto v = kv.get_double("H")) g.sim.region_height = *v;
    if (auto v = kv.get_double("w")) g.sim.window_width = *v;
    if (auto v = kv.get_double("h")) g.sim.window_height = *v;
    if (auto v = kv.get_unsigned("frames")) g.sim.frames = static_cast<std::size_t>(*v);
    if (auto v = kv.get_double("dt")) g.sim.dt = *v;
    g.tracker = tracker_config_from(kv);
    std::sort(g.deltas.begin(), g.deltas.end());
    g.deltas.erase(std::unique(g.deltas.begin(), g.deltas.end()), g.deltas.end());
    g.validate();
    return g;
}

namespace {

std::vector<RunRecord> run_replicate(const ExperimentGrid& grid, std::size_t setting, std::size_t replicate) {
    const std::size_t sigma_index = setting % grid.sigmas.size();
    const std::size_t n0_index = setting / grid.sigmas.size();
    SimConfig sc = grid.sim;
    sc.expected_visible = grid.n0[n0_index];
    sc.sigma = grid.sigmas[sigma_index];
    // Replicate r uses the same seed in every setting.
    sc.seed = grid.seed + replicate;
    const SimOutput sim = simulate(sc);
    const FrameSequence& seq = sim.visible;

    RunRecord base;
    base.setting = setting;
    base.n0 = sc.expected_visible;
    base.sigma = sc.sigma;
    base.replicate = replicate;
    base.seed = sc.seed;

    const auto fill = [](RunRecord& r, const EvalReport& e) {
        r.f1 = e.whole.f_beta;
        r.precision = e.whole.precision;
        r.recall = e.whole.recall;
        r.mean_pair_identity = e.mean_pair_identity();
        r.all_pairs_identical =
            std::find(e.pair_identity.begin(), e.pair_identity.end(), false) == e.pair_identity.end();
        r.path_identity = e.path_identity;
        r.mean_coverage = e.mean_coverage().value_or(r.mean_pair_identity);
    };

    std::vector<RunRecord> out;
    using clock = std::chrono::steady_clock;
    if (grid.bmcf) {
        const auto start = clock::now();
        const auto m = bipartite_matchings(seq, grid.tracker.bipartite);
        RunRecord r = base;
        r.method = Method::Bmcf;
        r.seconds = std::chrono::duration<double>(clock::now() - start).count();
        fill(r, evaluate(seq, m, sim.truth_matchings));
        r.candidates = seq.pair_count();
        out.push_back(r);
    }
    for (std::size_t delta : grid.deltas) {
        TrackerConfig tc = grid.tracker;
        tc.reduced.delta = delta;
        const auto start = clock::now();
        const TrackResult res = track(seq, tc);
        RunRecord r = base;
        r.method = Method::Tri;
        r.delta = delta;
        r.seconds = std::chrono::duration<double>(clock::now() - start).count();
        fill(r, evaluate(seq, res.matchings, sim.truth_matchings, 1.0, res.spaces));
        r.candidates = std::accumulate(res.diagnostics.space_sizes.begin(), res.diagnostics.space_sizes.end(),
                                       std::uint64_t{0});
        r.triple_evaluations = res.diagnostics.triple_evaluations;
        out.push_back(r);
    }
    return out;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentGrid& grid) {
    grid.validate();
    const std::size_t settings = grid.n0.size() * grid.sigmas.size();
    const std::size_t tasks = settings * grid.replicates;
    std::vector<std::vector<RunRecord>> results(tasks);
    std::vector<std::exception_ptr> errors(tasks);

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (std::size_t t = next++; t < tasks; t = next++) {
            try {
                results[t] = run_replicate(grid, t / grid.replicates, t % grid.replicates);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        }
    };
    const unsigned threads = static_cast<unsigned>(
        std::min<std::size_t>(grid.threads ? grid.threads : std::max(1u, std::thread::hardware_concurrency()), tasks));
    {
        std::vector<std::jthread> pool;
        for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
        worker();
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    std::vector<RunRecord> runs;
    for (auto& r : results) runs.insert(runs.end(), r.begin(), r.end());
    return runs;
}

void write_runs_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
    out << "N0,sigma,replicate,seed,method,delta,f1,precision,recall,mean_coverage,mean_pair_identity,"
           "all_pairs_identical,path_identity,candidates,triple_evaluations\n";
    for (const auto& r : runs) {
        out << fmt(r.n0) << ',' << fmt(r.sigma) << ',' << r.replicate << ',' << r.seed << ',' << method_name(r.method)
            << ',';
        if (r.method == Method::Tri) out << r.delta;
        out << ',' << fmt(r.f1) << ',' << fmt(r.precision) << ',' << fmt(r.recall) << ',' << fmt(r.mean_coverage)
            << ',' << fmt(r.mean_pair_identity) << ',' << (r.all_pairs_identical ? 1 : 0) << ','
            << (r.path_identity ? 1 : 0) << ',' << r.candidates << ',' << r.triple_evaluations << '\n';
    }
}

void write_timing_csv(std::ostream& out, const std::vector<RunRecord>& runs) {
    out << "N0,sigma,replicate,method,delta,seconds\n";
    for (const auto& r : runs) {
        out << fmt(r.n0) << ',' << fmt(r.sigma) << ',' << r.replicate << ',' << method_name(r.method) << ',';
        if (r.method == Method::Tri) out << r.delta;
        out << ',' << fmt(r.seconds) << '\n';
    }
}

void write_aggregate_csv(std::ostream& out, const ExperimentGrid& grid, const std::vector<RunRecord>& runs) {
    out << "N0,sigma,method,delta,replicates,f1_mean,f1_err,coverage_mean,coverage_err,pair_identity_mean,"
           "pair_identity_err,path_identity_rate,triple_evaluations_mean,eval_ratio_vs_prev,theoretical_eval_ratio,"
           "improvement_ratio\n";
    const std::size_t settings = grid.n0.size() * grid.sigmas.size();
    for (std::size_t s = 0; s < settings; ++s) {
        struct Row {
            Method method;
            std::size_t delta;
            std::vector<double> f1, cov, pi, path;
            std::uint64_t evals = 0;
        };
        std::vector<Row> rows;
        if (grid.bmcf) rows.push_back({Method::Bmcf, 0, {}, {}, {}, {}, 0});
        for (std::size_t d : grid.deltas) rows.push_back({Method::Tri, d, {}, {}, {}, {}, 0});
        double n0 = 0.0;
        double sigma = 0.0;
        for (const auto& r : runs) {
            if (r.setting != s) continue;
            n0 = r.n0;
            sigma = r.sigma;
            for (auto& row : rows) {
                if (row.method != r.method || (r.method == Method::Tri && row.delta != r.delta)) continue;
                row.f1.push_back(r.f1);
                row.cov.push_back(r.mean_coverage);
                row.pi.push_back(r.mean_pair_identity);
                row.path.push_back(r.path_identity ? 1.0 : 0.0);
                row.evals += r.triple_evaluations;
            }
        }
        std::map<std::size_t, const Row*> tri;
        for (const auto& row : rows) {
            if (row.method == Method::Tri) tri[row.delta] = &row;
        }
        for (const auto& row : rows) {
            const Stats f1 = stats(row.f1);
            const Stats cov = stats(row.cov);
            const Stats pi = stats(row.pi);
            const std::size_t n = row.f1.size();
            out << fmt(n0) << ',' << fmt(sigma) << ',' << method_name(row.method) << ',';
            if (row.method == Method::Tri) out << row.delta;
            out << ',' << n << ',' << fmt(f1.mean) << ',' << fmt(1.96 * f1.sd) << ',' << fmt(cov.mean) << ','
                << fmt(1.96 * cov.sd) << ',' << fmt(pi.mean) << ',' << fmt(1.96 * pi.sd) << ','
                << fmt(stats(row.path).mean) << ',';
            if (row.method == Method::Tri) {
                out << fmt(static_cast<double>(row.evals) / static_cast<double>(std::max<std::size_t>(n, 1)));
            }
            out << ',';
            const bool has_prev = row.method == Method::Tri && row.delta > 0 && tri.count(row.delta - 1);
            if (has_prev && tri[row.delta - 1]->evals > 0) {
                out << fmt(static_cast<double>(row.evals) / static_cast<double>(tri[row.delta - 1]->evals));
            }
            out << ',';
            if (row.method == Method::Tri && row.delta > 0) out << fmt(theoretical_eval_ratio(row.delta));
            out << ',';
            if (has_prev && tri.count(row.delta + 1)) {
                const auto ratio = improvement_ratio(stats(tri[row.delta - 1]->f1).mean, f1.mean,
                                                     stats(tri[row.delta + 1]->f1).mean);
                if (ratio) out << fmt(*ratio);
            }
            out << '\n';
        }
    }
}

int cmd_experiment(const ExperimentOptions& opt, std::ostream& err) {
    return guarded(err, [&] {
        ExperimentGrid grid;
        if (opt.config) {
            const auto kv = load_config(*opt.config);
            grid = experiment_grid_from(kv);
            kv.reject_unused();
        }
        if (opt.seed) grid.seed = *opt.seed;
        if (opt.replicates) grid.replicates = *opt.replicates;
        if (opt.sigma_mode) grid.tracker.sigma = parse_sigma_setting(*opt.sigma_mode);
        if (opt.threads) grid.threads = *opt.threads;
        grid.validate();

        const auto runs = run_experiment(grid);
        fs::create_directories(opt.output_dir);
        {
            auto out = open_output(opt.output_dir / "runs.csv");
            write_runs_csv(out, runs);
        }
        {
            auto out = open_output(opt.output_dir / "aggregate.csv");
            write_aggregate_csv(out, grid, runs);
        }
        {
            auto out = open_output(opt.output_dir / "timing.csv");
            write_timing_csv(out, runs);
        }
    });
}

// ---------------------------------------------------------------------------
// command line

int run(int argc, char** argv) {
    CLI::App app{"Multi-object association by velocity-smoothness matching"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "trimatch 0.1.0");

    TrackOptions track_opt;
    std::string method = "tri";
    auto* track_cmd = app.add_subcommand("track", "Link detections into tracks");
    track_cmd->add_option("--input,-i", track_opt.input, "Detection file (frame_index,x,y)")->required();
    track_cmd->add_option("--output,-o", track_opt.output, "Track file to write")->required();
    track_cmd->add_option("--config,-c", track_opt.config, "Tracker configuration file");
    track_cmd->add_option("--method,-m", method, "bmcf or tri")->check(CLI::IsMember({"bmcf", "tri"}));
    track_cmd->add_option("--delta", track_opt.delta, "Disappearance-count neighbourhood radius");
    track_cmd->add_option("--sigma-mode", track_opt.sigma_mode, "per-frame, pooled or fixed:<sigma>");
    track_cmd->add_option("--diagnostics", track_opt.diagnostics, "Diagnostics JSON (default: output with .json)");
    track_cmd->add_option("--matchings", track_opt.matchings, "Also dump the matching vectors here");
    track_cmd->add_option("--dt", track_opt.dt, "Frame interval")->check(CLI::PositiveNumber);

    SimulateOptions sim_opt;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic video with ground truth");
    sim_cmd->add_option("--config,-c", sim_opt.config, "Simulation configuration file");
    sim_cmd->add_option("--output,-o", sim_opt.output_dir, "Output directory")->required();
    sim_cmd->add_option("--seed", sim_opt.seed, "Random seed");

    EvaluateOptions eval_opt;
    auto* eval_cmd = app.add_subcommand("evaluate", "Score predicted tracks against ground truth");
    eval_cmd->add_option("--input,-i", eval_opt.pred, "Predicted track file")->required();
    eval_cmd->add_option("--truth,-t", eval_opt.truth, "Ground-truth track file")->required();
    eval_cmd->add_option("--output,-o", eval_opt.output, "Per-pair report CSV")->required();
    eval_cmd->add_option("--summary", eval_opt.summary, "Summary JSON (default: output with .json)");
    eval_cmd->add_option("--beta", eval_opt.beta, "F-score beta")->check(CLI::PositiveNumber);

    ExperimentOptions exp_opt;
    auto* exp_cmd = app.add_subcommand("experiment", "Run a simulation grid and tabulate accuracy and cost");
    exp_cmd->add_option("--config,-c", exp_opt.config, "Grid configuration file");
    exp_cmd->add_option("--output,-o", exp_opt.output_dir, "Output directory")->required();
    exp_cmd->add_option("--seed", exp_opt.seed, "Base seed; replicate r uses seed + r");
    exp_cmd->add_option("--replicates", exp_opt.replicates, "Replicates per setting");
    exp_cmd->add_option("--sigma-mode", exp_opt.sigma_mode, "per-frame, pooled or fixed:<sigma>");
    exp_cmd->add_option("--threads", exp_opt.threads, "Worker threads (0: all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    if (*track_cmd) {
        track_opt.method = parse_method(method);
        return cmd_track(track_opt, std::cerr);
    }
    if (*sim_cmd) return cmd_simulate(sim_opt, std::cerr);
    if (*eval_cmd) return cmd_evaluate(eval_opt, std::cerr);
    return cmd_experiment(exp_opt, std::cerr);
}

}  // namespace trimatch::cli
