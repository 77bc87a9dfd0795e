#pragma once

// Tracking accuracy measures. A predicted path counts as correct only when it
// equals a true path detection for detection.

#include "trimatch/core.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace trimatch {

/// (1 + b^2) p r / (b^2 p + r); zero when precision and recall are both zero.
double f_beta(double precision, double recall, double beta = 1.0);

struct PathAccuracy {
    std::size_t correct = 0;
    std::size_t predicted = 0;
    std::size_t truth = 0;
    double precision = 1.0;
    double recall = 1.0;
    double f_beta = 1.0;
};

/// Precision = correct / |pred|, recall = correct / |truth|. An empty side has
/// rate 1 when the other side is empty too, else 0.
PathAccuracy path_accuracy(const TrajectorySet& pred, const TrajectorySet& truth, double beta = 1.0);

/// Entry k - 2 holds path_accuracy on the first k frames, for k = 2 .. f.
std::vector<PathAccuracy> cumulative_path_accuracy(const FrameSequence& seq, std::span<const MatchingVector> pred,
                                                   std::span<const MatchingVector> truth, double beta = 1.0);

/// Path F_beta of each two-frame sub-video (k, k+1).
std::vector<double> pair_accuracy(const FrameSequence& seq, std::span<const MatchingVector> pred,
                                  std::span<const MatchingVector> truth, double beta = 1.0);

inline bool pair_identity(const MatchingVector& pred, const MatchingVector& truth) { return pred == truth; }
inline bool path_identity(const TrajectorySet& pred, const TrajectorySet& truth) { return pred == truth; }
inline bool coverage(const CandidateSpace& space, const MatchingVector& truth) { return space.contains(truth); }

/// (F(d+1) - F(d)) / (F(d) - F(d-1)); nullopt when the denominator is zero.
std::optional<double> improvement_ratio(double f_prev, double f_here, double f_next);

/// R(d) for d = 1 .. n-2 given F_1 indexed by d = 0 .. n-1. Entry d - 1 holds R(d).
std::vector<std::optional<double>> improvement_ratios(std::span<const double> f1_by_delta);

struct EvalReport {
    std::vector<double> pair_accuracy;
    std::vector<bool> pair_identity;
    std::vector<PathAccuracy> cumulative;  // k = 2 .. f
    std::optional<std::vector<bool>> coverage;  // present when spaces were supplied
    PathAccuracy whole;
    bool path_identity = true;
    double beta = 1.0;

    double mean_pair_identity() const;
    std::optional<double> mean_coverage() const;
};

/// Full report for `pred` against `truth`. Pass the candidate spaces used to
/// produce `pred` to include coverage.
EvalReport evaluate(const FrameSequence& seq, std::span<const MatchingVector> pred,
                    std::span<const MatchingVector> truth, double beta = 1.0,
                    std::span<const CandidateSpace> spaces = {});

/// Columns: pair,pair_accuracy,pair_identity,coverage,cumulative_precision,
/// cumulative_recall,cumulative_f_beta. Row t covers frames t and t+1; the
/// cumulative columns refer to the prefix ending at frame t+1. Coverage is
/// left empty when unavailable.
void write_report_csv(std::ostream& out, const EvalReport& report);

}  // namespace trimatch
