#include "trimatch/metrics.hpp"
#include "trimatch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace trimatch {

namespace {

double rate(std::size_t correct, std::size_t total, std::size_t other_total) {
    if (total == 0) return other_total == 0 ? 1.0 : 0.0;
    return static_cast<double>(correct) / static_cast<double>(total);
}

void check_aligned(const FrameSequence& seq, std::span<const MatchingVector> pred,
                   std::span<const MatchingVector> truth) {
    if (pred.size() != seq.pair_count() || truth.size() != seq.pair_count()) {
        throw InvalidInput("need one predicted and one true matching per frame pair");
    }
}

FrameSequence window(const FrameSequence& seq, std::size_t first, std::size_t count) {
    std::vector<Frame> frames(seq.frames().begin() + static_cast<std::ptrdiff_t>(first),
                              seq.frames().begin() + static_cast<std::ptrdiff_t>(first + count));
    return FrameSequence(std::move(frames), seq.dt());
}

std::string format_rate(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

double f_beta(double precision, double recall, double beta) {
    if (!(beta > 0.0)) throw InvalidInput("beta must be positive");
    if (!(precision >= 0.0 && precision <= 1.0 && recall >= 0.0 && recall <= 1.0)) {
        throw InvalidInput("precision and recall must lie in [0, 1]");
    }
    const double b2 = beta * beta;
    const double denom = b2 * precision + recall;
    if (denom == 0.0) return 0.0;
    return (1.0 + b2) * precision * recall / denom;
}

PathAccuracy path_accuracy(const TrajectorySet& pred, const TrajectorySet& truth, double beta) {
    std::vector<Track> a = pred.tracks();
    std::vector<Track> b = truth.tracks();
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    PathAccuracy out;
    out.predicted = a.size();
    out.truth = b.size();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++out.correct;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    out.precision = rate(out.correct, out.predicted, out.truth);
    out.recall = rate(out.correct, out.truth, out.predicted);
    out.f_beta = f_beta(out.precision, out.recall, beta);
    return out;
}

std::vector<PathAccuracy> cumulative_path_accuracy(const FrameSequence& seq, std::span<const MatchingVector> pred,
                                                   std::span<const MatchingVector> truth, double beta) {
    check_aligned(seq, pred, truth);
    std::vector<PathAccuracy> out;
    out.reserve(seq.pair_count());
    for (std::size_t k = 2; k <= seq.frame_count(); ++k) {
        const FrameSequence sub = seq.prefix(k);
        out.push_back(path_accuracy(assemble_trajectories(sub, pred.first(k - 1)),
                                    assemble_trajectories(sub, truth.first(k - 1)), beta));
    }
    return out;
}

std::vector<double> pair_accuracy(const FrameSequence& seq, std::span<const MatchingVector> pred,
                                  std::span<const MatchingVector> truth, double beta) {
    check_aligned(seq, pred, truth);
    std::vector<double> out;
    out.reserve(seq.pair_count());
    for (std::size_t k = 0; k < seq.pair_count(); ++k) {
        const FrameSequence sub = window(seq, k, 2);
        out.push_back(path_accuracy(assemble_trajectories(sub, pred.subspan(k, 1)),
                                    assemble_trajectories(sub, truth.subspan(k, 1)), beta)
                          .f_beta);
    }
    return out;
}

std::optional<double> improvement_ratio(double f_prev, double f_here, double f_next) {
    const double denom = f_here - f_prev;
    if (denom == 0.0) return std::nullopt;
    return (f_next - f_here) / denom;
}

std::vector<std::optional<double>> improvement_ratios(std::span<const double> f1_by_delta) {
    std::vector<std::optional<double>> out;
    for (std::size_t d = 1; d + 1 < f1_by_delta.size(); ++d) {
        out.push_back(improvement_ratio(f1_by_delta[d - 1], f1_by_delta[d], f1_by_delta[d + 1]));
    }
    return out;
}

double EvalReport::mean_pair_identity() const {
    if (pair_identity.empty()) return 1.0;
    return static_cast<double>(std::count(pair_identity.begin(), pair_identity.end(), true)) /
           static_cast<double>(pair_identity.size());
}

std::optional<double> EvalReport::mean_coverage() const {
    if (!coverage || coverage->empty()) return std::nullopt;
    return static_cast<double>(std::count(coverage->begin(), coverage->end(), true)) /
           static_cast<double>(coverage->size());
}

EvalReport evaluate(const FrameSequence& seq, std::span<const MatchingVector> pred,
                    std::span<const MatchingVector> truth, double beta, std::span<const CandidateSpace> spaces) {
    check_aligned(seq, pred, truth);
    if (!spaces.empty() && spaces.size() != seq.pair_count()) {
        throw InvalidInput("need one candidate space per frame pair");
    }
    EvalReport r;
    r.beta = beta;
    r.pair_accuracy = pair_accuracy(seq, pred, truth, beta);
    r.cumulative = cumulative_path_accuracy(seq, pred, truth, beta);
    r.whole = r.cumulative.empty() ? PathAccuracy{} : r.cumulative.back();
    for (std::size_t k = 0; k < seq.pair_count(); ++k) r.pair_identity.push_back(pair_identity(pred[k], truth[k]));
    r.path_identity = path_identity(assemble_trajectories(seq, pred), assemble_trajectories(seq, truth));
    if (!spaces.empty()) {
        r.coverage.emplace();
        for (std::size_t k = 0; k < spaces.size(); ++k) r.coverage->push_back(coverage(spaces[k], truth[k]));
    }
    return r;
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
    out << "pair,pair_accuracy,pair_identity,coverage,cumulative_precision,cumulative_recall,cumulative_f_beta\n";
    for (std::size_t t = 0; t < report.pair_accuracy.size(); ++t) {
        out << t << ',' << format_rate(report.pair_accuracy[t]) << ',' << (report.pair_identity[t] ? 1 : 0) << ',';
        if (report.coverage) out << ((*report.coverage)[t] ? 1 : 0);
        const auto& c = report.cumulative[t];
        out << ',' << format_rate(c.precision) << ',' << format_rate(c.recall) << ',' << format_rate(c.f_beta) << '\n';
    }
}

}  // namespace trimatch
