#include "trimatch/errors.hpp"
#include "trimatch/tripartite.hpp"

#include <algorithm>

namespace trimatch {

SigmaEstimate estimate_sigma(const FrameSequence& seq, std::span<const MatchingVector> matchings, SigmaMode mode,
                             double sigma_floor, double fallback_sigma) {
    if (matchings.size() != seq.pair_count()) throw InvalidInput("sigma estimation needs one matching per frame pair");
    for (std::size_t p = 0; p < matchings.size(); ++p) {
        if (matchings[p].source_count() != seq.object_count(p) ||
            matchings[p].target_count() != seq.object_count(p + 1)) {
            throw InvalidInput("matching does not fit the frame sizes");
        }
    }
    const std::size_t pairs = matchings.size();
    const double dt = seq.dt();

    // Squared velocity changes grouped by the outgoing pair index k.
    std::vector<double> sum_sq(pairs, 0.0);
    std::vector<std::size_t> count(pairs, 0);
    for (std::size_t k = 1; k < pairs; ++k) {
        const auto pred = matchings[k - 1].predecessors();
        const auto& prev = seq.frame(k - 1);
        const auto& cur = seq.frame(k);
        const auto& next = seq.frame(k + 1);
        for (std::size_t i = 0; i < cur.size(); ++i) {
            if (pred[i] == MatchingVector::kDisappear || matchings[k].disappears(i)) continue;
            const auto in = Velocity::between(prev[static_cast<std::size_t>(pred[i])], cur[i], dt);
            const auto out = Velocity::between(cur[i], next[static_cast<std::size_t>(matchings[k][i])], dt);
            const double dx = out.vx - in.vx;
            const double dy = out.vy - in.vy;
            sum_sq[k] += dx * dx + dy * dy;
            ++count[k];
        }
    }

    SigmaEstimate est;
    double total_sq = 0.0;
    for (std::size_t k = 0; k < pairs; ++k) {
        total_sq += sum_sq[k];
        est.chains += count[k];
    }
    const auto floored = [sigma_floor](double s) { return std::max(s, sigma_floor); };
    if (est.chains == 0) {
        est.fallback = true;
        est.pooled = floored(fallback_sigma);
    } else {
        // Two components per chained object.
        est.pooled = floored(std::sqrt(total_sq / (2.0 * static_cast<double>(est.chains))));
    }

    est.per_pair.assign(pairs, est.pooled);
    if (mode == SigmaMode::PerFrame) {
        for (std::size_t k = 0; k < pairs; ++k) {
            if (count[k] > 0) est.per_pair[k] = floored(std::sqrt(sum_sq[k] / (2.0 * static_cast<double>(count[k]))));
        }
    }
    return est;
}

}  // namespace trimatch
