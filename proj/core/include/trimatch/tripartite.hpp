#pragma once

// Velocity-smoothness (three-frame) association.
//
// The chain objective over matchings M_0 .. M_{f-2} is
//
//   score = h_first(M_0) + sum_{k=1}^{f-2} h_k(M_{k-1}, M_k)
//
// where h_first is the position model with zero prior velocity and h_k scores
// the velocity change of objects chained through frames k-1, k, k+1. Every
// appearance and disappearance adds a constant log-penalty.

#include "trimatch/assignment.hpp"
#include "trimatch/core.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

namespace trimatch {

/// Isotropic Gaussian noise per frame pair plus the event penalty.
///
/// `sigmas` holds either one value per frame pair or a single pooled value
/// applied to every pair.
struct NoiseModel {
    std::vector<double> sigmas{1.0};
    double lambda_event = -10.0;
    double sigma_floor = 1e-6;

    static NoiseModel pooled(double sigma, double lambda_event, double sigma_floor = 1e-6) {
        return {{sigma}, lambda_event, sigma_floor};
    }

    double sigma(std::size_t pair) const { return sigmas.size() == 1 ? sigmas.front() : sigmas.at(pair); }

    /// Throws InvalidConfiguration on sigma below the floor or a non-finite penalty.
    void validate() const;
    /// Same, and checks that per-pair sigmas cover `pair_count` pairs.
    void validate_for(std::size_t pair_count) const;
};

/// log N(v | 0, s^2 I) in two dimensions, given |v|^2.
inline double log_normal_2d(double squared_norm, double s) noexcept {
    return -std::log(2.0 * std::numbers::pi) - 2.0 * std::log(s) - squared_norm / (2.0 * s * s);
}

/// Position-model penalty at the gate distance: log N(d | 0, dt^2 sigma^2 I)
/// with |d|^2 = gate_cost.
double event_penalty_at_gate(double gate_cost, double sigma, double dt);

/// h_first: position model for frames 0 -> 1 with zero prior velocity, using
/// sigma of pair 0.
double first_pair_log_likelihood(const FrameSequence& seq, const MatchingVector& m, const NoiseModel& noise);

/// h_k for the middle frame k (1 <= k <= f-2): `m_prev` links k-1 -> k and
/// `m_next` links k -> k+1; sigma of pair k applies.
double triple_log_likelihood(const FrameSequence& seq, std::size_t k, const MatchingVector& m_prev,
                             const MatchingVector& m_next, const NoiseModel& noise);

/// h_first + sum of h_k over the whole chain.
double chain_log_likelihood(const FrameSequence& seq, std::span<const MatchingVector> matchings,
                            const NoiseModel& noise);

/// Per-object decomposition of h_k for a fixed `m_prev`:
///
///   h_k(m_prev, m_next) = sum_i term(i, m_next[i]) + lambda * events(m_next)
///
/// term() of a disappearing object is zero; the penalty sits in events().
class TripleScorer {
public:
    TripleScorer(const FrameSequence& seq, std::size_t k, const MatchingVector& m_prev, const NoiseModel& noise);

    std::size_t object_count() const noexcept { return current_.size(); }

    double term(std::size_t i, MatchingVector::Entry target) const noexcept {
        if (target == MatchingVector::kDisappear) return 0.0;
        const Position& from = current_[i];
        const Position& to = next_[static_cast<std::size_t>(target)];
        const double vx = (to.x - from.x) * inv_dt_;
        const double vy = (to.y - from.y) * inv_dt_;
        if (has_incoming_[i]) {
            const double dx = vx - incoming_[i].vx;
            const double dy = vy - incoming_[i].vy;
            return velocity_const_ - (dx * dx + dy * dy) * velocity_scale_;
        }
        return position_const_ - (vx * vx + vy * vy) * position_scale_;
    }

    double events(const MatchingVector& m_next) const noexcept {
        return lambda_ * static_cast<double>(m_next.disappear_count() + m_next.appear_count());
    }

    /// Full evaluation, O(n).
    double score(const MatchingVector& m_next) const noexcept;

    /// Change of score() when entries i and j of `base` are exchanged, O(1).
    double exchange_delta(const MatchingVector& base, std::size_t i, std::size_t j) const noexcept {
        const auto bi = base[i];
        const auto bj = base[j];
        return term(i, bj) + term(j, bi) - term(i, bi) - term(j, bj);
    }

private:
    std::span<const Position> current_;
    std::span<const Position> next_;
    std::vector<Velocity> incoming_;
    std::vector<char> has_incoming_;
    double inv_dt_ = 1.0;
    double velocity_const_ = 0.0;
    double velocity_scale_ = 0.0;
    double position_const_ = 0.0;
    double position_scale_ = 0.0;
    double lambda_ = 0.0;
};

/// Score of `base` with one pair of entries exchanged, from the score of
/// `base` itself; only the two affected objects are re-evaluated.
inline double incremental_triple_score(double base_score, const TripleScorer& scorer, const MatchingVector& base,
                                       std::size_t i, std::size_t j) noexcept {
    return base_score + scorer.exchange_delta(base, i, j);
}

// ---------------------------------------------------------------------------
// Candidate spaces

inline constexpr std::size_t kDefaultSpaceCap = 1'000'000;

/// Closed-form |D| for a pair with n_k sources and n_next targets; saturates
/// at UINT64_MAX.
std::uint64_t full_space_size(std::size_t n_k, std::size_t n_next) noexcept;

/// Every valid matching vector for the pair. Refuses (CapacityExceeded) when
/// the closed-form size exceeds `cap`.
CandidateSpace build_full_space(std::size_t n_k, std::size_t n_next, std::size_t cap = kDefaultSpaceCap);

struct ReducedSpaceConfig {
    std::size_t delta = 1;
};

/// Disappearance counts [max(0, n_a - n_b), n_a] intersected with
/// [d* - delta, d* + delta]. Throws InvalidConfiguration when empty.
DisappearRange disappear_neighborhood(std::size_t n_a, std::size_t n_b, std::size_t d_star, std::size_t delta);

/// Union over d in the neighbourhood of the fixed-d bipartite solution and
/// all its single-exchange variants. Carries exchange groups.
CandidateSpace build_reduced_space(std::span<const Position> frame_a, std::span<const Position> frame_b,
                                   std::size_t d_star, const ReducedSpaceConfig& cfg);

/// Bound on |reduced space|: |neighbourhood| * (1 + n_a (n_a - 1) / 2).
std::uint64_t reduced_space_bound(std::size_t n_a, std::size_t neighborhood_size) noexcept;

// ---------------------------------------------------------------------------
// Dynamic programming

struct DpOptions {
    /// Score exchange-group members from their base (requires groups on the space).
    bool incremental = true;
    /// Worker threads for the per-candidate maximisation; 0 means hardware concurrency.
    unsigned threads = 1;
};

/// Suffix tables of the chain recursion, keyed by candidate rank.
///
/// For pair p < P-1, best[p][r] is the best achievable score of
/// h_{p+1} + ... + h_{P-1} given M_p = spaces[p][r]; follow[p][r] is the rank
/// of the lexicographically smallest maximising M_{p+1}. best[P-1] is zero.
struct DpTable {
    std::vector<std::vector<double>> best;
    std::vector<std::vector<std::uint32_t>> follow;
    std::uint64_t triple_evaluations = 0;
};

DpTable fill_dp_table(const FrameSequence& seq, std::span<const CandidateSpace> spaces, const NoiseModel& noise,
                      const DpOptions& options = {});

struct DpSolution {
    std::vector<MatchingVector> matchings;
    double score = 0.0;
    std::uint64_t triple_evaluations = 0;
};

/// Maximise the chain objective over spaces[0] x ... x spaces[P-1]; ties go to
/// the lexicographically smallest sequence of matching vectors.
DpSolution solve_dp(const FrameSequence& seq, std::span<const CandidateSpace> spaces, const NoiseModel& noise,
                    const DpOptions& options = {});

// ---------------------------------------------------------------------------
// Noise estimation

enum class SigmaMode { PerFrame, Pooled };

struct SigmaEstimate {
    std::vector<double> per_pair;  // one per frame pair
    double pooled = 0.0;
    std::size_t chains = 0;  // objects observed through three consecutive frames
    bool fallback = false;   // no chain anywhere; default sigma used
};

/// Root-mean-square of the velocity-change components along paths defined
/// by `matchings`. Per-frame mode assigns pair k the estimate from objects
/// chained through frames k-1, k, k+1; pairs without such objects inherit the
/// pooled value. Results are floored at `sigma_floor`.
SigmaEstimate estimate_sigma(const FrameSequence& seq, std::span<const MatchingVector> matchings, SigmaMode mode,
                             double sigma_floor = 1e-6, double fallback_sigma = 1.0);

// ---------------------------------------------------------------------------
// Pipeline

struct SigmaSetting {
    SigmaMode mode = SigmaMode::PerFrame;
    std::optional<double> fixed;  // overrides estimation when set
};

struct TrackerConfig {
    ReducedSpaceConfig reduced;
    BipartiteConfig bipartite;
    SigmaSetting sigma;
    double sigma_floor = 1e-6;
    double fallback_sigma = 1.0;
    std::optional<double> lambda_event;  // nullopt: penalty at the gate distance
    std::size_t space_cap = kDefaultSpaceCap;
    DpOptions dp;

    void validate() const;
};

struct TrackDiagnostics {
    double gate_cost = 0.0;
    double lambda_event = 0.0;
    std::vector<std::size_t> d_star;
    std::vector<std::size_t> space_sizes;
    std::vector<double> sigmas;
    double pooled_sigma = 0.0;
    bool sigma_fallback = false;
    std::uint64_t triple_evaluations = 0;
    double score = 0.0;
};

struct TrackResult {
    TrajectorySet trajectories;
    std::vector<MatchingVector> matchings;
    std::vector<MatchingVector> bipartite;  // per-pair BMCF seeds
    std::vector<CandidateSpace> spaces;
    NoiseModel noise;
    TrackDiagnostics diagnostics;
};

/// Per-pair BMCF over a sequence with the gate resolved once for the sequence.
std::vector<MatchingVector> bipartite_matchings(const FrameSequence& seq, const BipartiteConfig& cfg);

/// BMCF -> d* -> sigma from BMCF paths -> reduced spaces -> DP -> trajectories.
TrackResult track(const FrameSequence& seq, const TrackerConfig& cfg);

}  // namespace trimatch
