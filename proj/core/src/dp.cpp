#include "trimatch/detail/parallel.hpp"
#include "trimatch/errors.hpp"
#include "trimatch/tripartite.hpp"

#include <limits>
#include <string>

namespace trimatch {

namespace {

void check_spaces(const FrameSequence& seq, std::span<const CandidateSpace> spaces) {
    if (seq.frame_count() < 2) throw InvalidInput("dynamic programming needs at least two frames");
    if (spaces.size() != seq.pair_count()) {
        throw InvalidInput("expected " + std::to_string(seq.pair_count()) + " candidate spaces, got " +
                           std::to_string(spaces.size()));
    }
    for (std::size_t p = 0; p < spaces.size(); ++p) {
        if (spaces[p].empty()) throw InvalidInput("candidate space " + std::to_string(p) + " is empty");
        if (spaces[p].source_count() != seq.object_count(p) || spaces[p].target_count() != seq.object_count(p + 1)) {
            throw InvalidInput("candidate space " + std::to_string(p) + " does not fit the frame sizes");
        }
    }
}

// Running argmax with the lexicographic (lowest rank) tie-break.
struct Best {
    double value = -std::numeric_limits<double>::infinity();
    std::size_t rank = std::numeric_limits<std::size_t>::max();

    void offer(double v, std::size_t r) noexcept {
        if (v > value || (v == value && r < rank)) {
            value = v;
            rank = r;
        }
    }
};

}  // namespace

DpTable fill_dp_table(const FrameSequence& seq, std::span<const CandidateSpace> spaces, const NoiseModel& noise,
                      const DpOptions& options) {
    check_spaces(seq, spaces);
    noise.validate_for(spaces.size());
    const std::size_t pairs = spaces.size();

    DpTable table;
    table.best.resize(pairs);
    table.follow.resize(pairs);
    table.best[pairs - 1].assign(spaces[pairs - 1].size(), 0.0);
    table.follow[pairs - 1].assign(spaces[pairs - 1].size(), 0);

    for (std::size_t p = pairs - 1; p-- > 0;) {
        const CandidateSpace& here = spaces[p];
        const CandidateSpace& next = spaces[p + 1];
        const std::vector<double>& suffix = table.best[p + 1];
        auto& best = table.best[p];
        auto& follow = table.follow[p];
        best.assign(here.size(), 0.0);
        follow.assign(here.size(), 0);
        const bool incremental = options.incremental && next.has_exchange_groups();

        detail::parallel_for(here.size(), options.threads, [&](std::size_t begin, std::size_t end) {
            for (std::size_t r = begin; r < end; ++r) {
                const TripleScorer scorer(seq, p + 1, here[r], noise);
                Best choice;
                if (incremental) {
                    for (const auto& group : next.exchange_groups()) {
                        const double base = scorer.score(group.base);
                        choice.offer(base + suffix[group.base_rank], group.base_rank);
                        for (const auto& ex : group.exchanges) {
                            const double s = incremental_triple_score(base, scorer, group.base, ex.first, ex.second);
                            choice.offer(s + suffix[ex.rank], ex.rank);
                        }
                    }
                } else {
                    for (std::size_t y = 0; y < next.size(); ++y) choice.offer(scorer.score(next[y]) + suffix[y], y);
                }
                best[r] = choice.value;
                follow[r] = static_cast<std::uint32_t>(choice.rank);
            }
        });
        table.triple_evaluations += static_cast<std::uint64_t>(here.size()) * next.size();
    }
    return table;
}

DpSolution solve_dp(const FrameSequence& seq, std::span<const CandidateSpace> spaces, const NoiseModel& noise,
                    const DpOptions& options) {
    const DpTable table = fill_dp_table(seq, spaces, noise, options);

    Best start;
    for (std::size_t r = 0; r < spaces[0].size(); ++r) {
        start.offer(first_pair_log_likelihood(seq, spaces[0][r], noise) + table.best[0][r], r);
    }

    DpSolution out;
    out.score = start.value;
    out.triple_evaluations = table.triple_evaluations;
    out.matchings.reserve(spaces.size());
    std::size_t rank = start.rank;
    for (std::size_t p = 0; p < spaces.size(); ++p) {
        out.matchings.push_back(spaces[p][rank]);
        if (p + 1 < spaces.size()) rank = table.follow[p][rank];
    }
    return out;
}

}  // namespace trimatch
