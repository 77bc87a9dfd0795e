#include "trimatch/assignment.hpp"
#include "trimatch/detail/lap.hpp"
#include "trimatch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trimatch {

namespace {

void require_finite(std::span<const Position> frame, const char* name) {
    for (const auto& p : frame) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw InvalidInput(std::string("non-finite coordinate in ") + name);
        }
    }
}

MatchingVector to_matching(const std::vector<std::size_t>& row_to_col, std::size_t n_a, std::size_t n_b) {
    std::vector<MatchingVector::Entry> entries(n_a, MatchingVector::kDisappear);
    for (std::size_t i = 0; i < n_a; ++i) {
        if (row_to_col[i] < n_b) entries[i] = static_cast<MatchingVector::Entry>(row_to_col[i]);
    }
    return MatchingVector(std::move(entries), n_b);
}

}  // namespace

void BipartiteConfig::validate() const {
    if (const auto* f = std::get_if<FixedGate>(&gate)) {
        if (!(f->cost >= 0.0)) throw InvalidConfiguration("gate cost must be nonnegative");
    } else {
        const double q = std::get<QuantileGate>(gate).q;
        if (!(q > 0.0 && q < 1.0)) throw InvalidConfiguration("gate quantile must lie in (0, 1)");
    }
}

std::vector<double> nearest_neighbor_squared_distances(const FrameSequence& seq) {
    std::vector<double> out;
    for (std::size_t k = 0; k + 1 < seq.frame_count(); ++k) {
        const auto& next = seq.frame(k + 1);
        if (next.empty()) continue;
        for (const auto& p : seq.frame(k)) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : next) best = std::min(best, squared_distance(p, q));
            out.push_back(best);
        }
    }
    return out;
}

double sample_quantile(std::vector<double> values, double q) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const double h = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

double resolve_gate_cost(const FrameSequence& seq, const BipartiteConfig& cfg) {
    cfg.validate();
    if (const auto* f = std::get_if<FixedGate>(&cfg.gate)) return f->cost;
    return sample_quantile(nearest_neighbor_squared_distances(seq), std::get<QuantileGate>(cfg.gate).q);
}

double matched_squared_distance(std::span<const Position> frame_a, std::span<const Position> frame_b,
                                const MatchingVector& m) {
    double total = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m.disappears(i)) total += squared_distance(frame_a[i], frame_b[static_cast<std::size_t>(m[i])]);
    }
    return total;
}

double bipartite_cost(std::span<const Position> frame_a, std::span<const Position> frame_b, const MatchingVector& m,
                      double gate_cost) {
    const auto events = static_cast<double>(m.disappear_count() + m.appear_count());
    return matched_squared_distance(frame_a, frame_b, m) + (events == 0.0 ? 0.0 : gate_cost * events);
}

MatchingVector solve_bmcf(std::span<const Position> frame_a, std::span<const Position> frame_b,
                          const BipartiteConfig& cfg) {
    require_finite(frame_a, "frame_a");
    require_finite(frame_b, "frame_b");
    cfg.validate();
    const std::size_t n_a = frame_a.size();
    const std::size_t n_b = frame_b.size();

    double gate = 0.0;
    if (const auto* f = std::get_if<FixedGate>(&cfg.gate)) {
        gate = f->cost;
    } else {
        FrameSequence pair({Frame(frame_a.begin(), frame_a.end()), Frame(frame_b.begin(), frame_b.end())});
        gate = resolve_gate_cost(pair, cfg);
    }
    if (std::isinf(gate)) return solve_bmcf_fixed_d(frame_a, frame_b, feasible_disappear_range(n_a, n_b).lo);

    // Rows: sources a_i, then appearance dummies for each b_j.
    // Cols: targets b_j, then disappearance dummies for each a_i.
    const std::size_t n = n_a + n_b;
    detail::CostMatrix cost(n);
    for (std::size_t i = 0; i < n_a; ++i) {
        for (std::size_t j = 0; j < n_b; ++j) cost(i, j) = squared_distance(frame_a[i], frame_b[j]);
        cost(i, n_b + i) = gate;
    }
    for (std::size_t j = 0; j < n_b; ++j) {
        cost(n_a + j, j) = gate;
        for (std::size_t i = 0; i < n_a; ++i) cost(n_a + j, n_b + i) = 0.0;
    }

    const auto optimum = detail::solve_lap(cost);
    std::vector<std::size_t> rows(n_a);
    std::vector<std::vector<std::vector<std::size_t>>> options(n_a);
    for (std::size_t i = 0; i < n_a; ++i) {
        rows[i] = i;
        options[i].push_back({n_b + i});
        for (std::size_t j = 0; j < n_b; ++j) options[i].push_back({j});
    }
    return to_matching(detail::lexicographic_optimum(cost, optimum, rows, options), n_a, n_b);
}

MatchingVector solve_bmcf_fixed_d(std::span<const Position> frame_a, std::span<const Position> frame_b,
                                  std::size_t d) {
    require_finite(frame_a, "frame_a");
    require_finite(frame_b, "frame_b");
    const std::size_t n_a = frame_a.size();
    const std::size_t n_b = frame_b.size();
    if (!feasible_disappear_range(n_a, n_b).contains(d)) {
        throw InvalidInput("disappearance count " + std::to_string(d) + " infeasible for frames of size " +
                           std::to_string(n_a) + " and " + std::to_string(n_b));
    }
    if (d == n_a) return MatchingVector::all_disappear(n_a, n_b);

    // Rows: sources a_i, then fillers absorbing the n_b - (n_a - d) unmatched targets.
    // Cols: targets b_j, then d interchangeable disappearance slots.
    const std::size_t fillers = n_b + d - n_a;
    const std::size_t n = n_b + d;
    detail::CostMatrix cost(n);
    for (std::size_t i = 0; i < n_a; ++i) {
        for (std::size_t j = 0; j < n_b; ++j) cost(i, j) = squared_distance(frame_a[i], frame_b[j]);
        for (std::size_t s = 0; s < d; ++s) cost(i, n_b + s) = 0.0;
    }
    for (std::size_t r = 0; r < fillers; ++r) {
        for (std::size_t j = 0; j < n_b; ++j) cost(n_a + r, j) = 0.0;
    }

    const auto optimum = detail::solve_lap(cost);
    std::vector<std::size_t> slots(d);
    for (std::size_t s = 0; s < d; ++s) slots[s] = n_b + s;
    std::vector<std::size_t> rows(n_a);
    std::vector<std::vector<std::vector<std::size_t>>> options(n_a);
    for (std::size_t i = 0; i < n_a; ++i) {
        rows[i] = i;
        if (d > 0) options[i].push_back(slots);
        for (std::size_t j = 0; j < n_b; ++j) options[i].push_back({j});
    }
    return to_matching(detail::lexicographic_optimum(cost, optimum, rows, options), n_a, n_b);
}

}  // namespace trimatch
