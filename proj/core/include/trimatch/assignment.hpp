#pragma once

// Two-frame (position model) association. Costs are squared Euclidean
// distances; every appearance and every disappearance costs the gate value T.

#include "trimatch/core.hpp"

#include <cstddef>
#include <limits>
#include <span>
#include <variant>

namespace trimatch {

struct FixedGate {
    double cost = 0.0;  // T >= 0; +infinity disables optional events
};

/// Gate T taken as the q-quantile of nearest-neighbour squared distances
/// between consecutive frames.
struct QuantileGate {
    double q = 0.99;
};

struct BipartiteConfig {
    std::variant<FixedGate, QuantileGate> gate = QuantileGate{};

    static BipartiteConfig fixed(double cost) { return {FixedGate{cost}}; }
    static BipartiteConfig ungated() { return fixed(std::numeric_limits<double>::infinity()); }
    static BipartiteConfig quantile(double q) { return {QuantileGate{q}}; }

    void validate() const;
};

/// For every detection of frame k (k < f-1), the squared distance to its
/// nearest detection in frame k+1. Pairs with an empty side contribute nothing.
std::vector<double> nearest_neighbor_squared_distances(const FrameSequence& seq);

/// Linear-interpolated sample quantile (R type 7). Empty input yields 0.
double sample_quantile(std::vector<double> values, double q);

/// Gate value for a whole sequence: fixed value, or the quantile over every
/// consecutive pair.
double resolve_gate_cost(const FrameSequence& seq, const BipartiteConfig& cfg);

/// Sum of matched squared distances plus gate * (disappearances + appearances).
double bipartite_cost(std::span<const Position> frame_a, std::span<const Position> frame_b, const MatchingVector& m,
                      double gate_cost);

/// Sum of matched squared distances only.
double matched_squared_distance(std::span<const Position> frame_a, std::span<const Position> frame_b,
                                const MatchingVector& m);

/// Minimum bipartite_cost matching between two frames; ties resolve to the
/// lexicographically smallest vector. A quantile gate is resolved on this pair.
/// An infinite gate admits only the forced max(0, n_a - n_b) disappearances.
MatchingVector solve_bmcf(std::span<const Position> frame_a, std::span<const Position> frame_b,
                          const BipartiteConfig& cfg);

/// Minimum matched squared distance among matchings with exactly `d`
/// disappearances, max(0, n_a - n_b) <= d <= n_a. Ties resolve lexicographically.
MatchingVector solve_bmcf_fixed_d(std::span<const Position> frame_a, std::span<const Position> frame_b,
                                  std::size_t d);

/// Feasible disappearance counts for a pair: [max(0, n_a - n_b), n_a].
struct DisappearRange {
    std::size_t lo = 0;
    std::size_t hi = 0;

    bool contains(std::size_t d) const noexcept { return d >= lo && d <= hi; }
};

inline DisappearRange feasible_disappear_range(std::size_t n_a, std::size_t n_b) noexcept {
    return {n_a > n_b ? n_a - n_b : 0, n_a};
}

}  // namespace trimatch
