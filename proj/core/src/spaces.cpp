#include "trimatch/errors.hpp"
#include "trimatch/tripartite.hpp"

#include <limits>
#include <string>

namespace trimatch {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t out = 0;
    return __builtin_mul_overflow(a, b, &out) ? kSaturated : out;
}

std::uint64_t add_sat(std::uint64_t a, std::uint64_t b) noexcept {
    std::uint64_t out = 0;
    return __builtin_add_overflow(a, b, &out) ? kSaturated : out;
}

std::uint64_t binomial(std::size_t n, std::size_t k) noexcept {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t out = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        // out * (n - k + i) / i is exact at every step; fall back to saturation on overflow.
        const std::uint64_t num = mul_sat(out, n - k + i);
        if (num == kSaturated) return kSaturated;
        out = num / i;
    }
    return out;
}

void enumerate_into(std::vector<MatchingVector::Entry>& entries, std::vector<char>& used, std::size_t i,
                    std::size_t target_count, std::vector<MatchingVector>& out) {
    if (i == entries.size()) {
        out.emplace_back(entries, target_count);
        return;
    }
    entries[i] = MatchingVector::kDisappear;
    enumerate_into(entries, used, i + 1, target_count, out);
    for (std::size_t j = 0; j < target_count; ++j) {
        if (used[j]) continue;
        used[j] = 1;
        entries[i] = static_cast<MatchingVector::Entry>(j);
        enumerate_into(entries, used, i + 1, target_count, out);
        used[j] = 0;
    }
}

}  // namespace

std::uint64_t full_space_size(std::size_t n_k, std::size_t n_next) noexcept {
    const auto range = feasible_disappear_range(n_k, n_next);
    std::uint64_t total = 0;
    for (std::size_t d = range.lo; d <= range.hi; ++d) {
        const std::size_t matched = n_k - d;
        std::uint64_t arrangements = 1;  // n_next! / (n_next - matched)!
        for (std::size_t t = 0; t < matched; ++t) arrangements = mul_sat(arrangements, n_next - t);
        total = add_sat(total, mul_sat(binomial(n_k, d), arrangements));
    }
    return total;
}

CandidateSpace build_full_space(std::size_t n_k, std::size_t n_next, std::size_t cap) {
    const std::uint64_t size = full_space_size(n_k, n_next);
    if (size > cap) {
        throw CapacityExceeded("full space for " + std::to_string(n_k) + " x " + std::to_string(n_next) +
                               " objects has " + (size == kSaturated ? std::string("> 2^64") : std::to_string(size)) +
                               " candidates, above the cap of " + std::to_string(cap));
    }
    std::vector<MatchingVector> out;
    out.reserve(size);
    std::vector<MatchingVector::Entry> entries(n_k);
    std::vector<char> used(n_next, 0);
    enumerate_into(entries, used, 0, n_next, out);
    return CandidateSpace(std::move(out), n_k, n_next);
}

DisappearRange disappear_neighborhood(std::size_t n_a, std::size_t n_b, std::size_t d_star, std::size_t delta) {
    const auto feasible = feasible_disappear_range(n_a, n_b);
    if (!feasible.contains(d_star)) {
        throw InvalidConfiguration("d* = " + std::to_string(d_star) + " is infeasible for a " + std::to_string(n_a) +
                                   " x " + std::to_string(n_b) + " pair");
    }
    const std::size_t lo = std::max(feasible.lo, d_star > delta ? d_star - delta : 0);
    const std::size_t hi = std::min(feasible.hi, d_star + delta);
    if (lo > hi) throw InvalidConfiguration("empty disappearance neighbourhood");
    return {lo, hi};
}

CandidateSpace build_reduced_space(std::span<const Position> frame_a, std::span<const Position> frame_b,
                                   std::size_t d_star, const ReducedSpaceConfig& cfg) {
    const std::size_t n_a = frame_a.size();
    const std::size_t n_b = frame_b.size();
    const auto range = disappear_neighborhood(n_a, n_b, d_star, cfg.delta);

    std::vector<std::pair<MatchingVector, std::vector<std::pair<std::uint32_t, std::uint32_t>>>> groups;
    for (std::size_t d = range.lo; d <= range.hi; ++d) {
        MatchingVector base = solve_bmcf_fixed_d(frame_a, frame_b, d);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
        pairs.reserve(n_a * (n_a > 0 ? n_a - 1 : 0) / 2);
        for (std::size_t i = 0; i < n_a; ++i) {
            for (std::size_t j = i + 1; j < n_a; ++j) {
                // Exchanging two disappearances reproduces the base.
                if (base.disappears(i) && base.disappears(j)) continue;
                pairs.emplace_back(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
            }
        }
        groups.emplace_back(std::move(base), std::move(pairs));
    }
    return CandidateSpace::from_exchanges(n_a, n_b, groups);
}

std::uint64_t reduced_space_bound(std::size_t n_a, std::size_t neighborhood_size) noexcept {
    const std::uint64_t per_d = 1 + static_cast<std::uint64_t>(n_a) * (n_a > 0 ? n_a - 1 : 0) / 2;
    return mul_sat(per_d, neighborhood_size);
}

}  // namespace trimatch
