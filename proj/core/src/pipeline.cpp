#include "trimatch/errors.hpp"
#include "trimatch/tripartite.hpp"

namespace trimatch {

void TrackerConfig::validate() const {
    bipartite.validate();
    if (!(sigma_floor > 0.0)) throw InvalidConfiguration("sigma floor must be positive");
    if (!(fallback_sigma > 0.0)) throw InvalidConfiguration("fallback sigma must be positive");
    if (sigma.fixed && !(*sigma.fixed >= sigma_floor && std::isfinite(*sigma.fixed))) {
        throw InvalidConfiguration("fixed sigma must be finite and at least the sigma floor");
    }
    if (lambda_event && !std::isfinite(*lambda_event)) throw InvalidConfiguration("event penalty must be finite");
    if (space_cap == 0) throw InvalidConfiguration("space cap must be positive");
}

std::vector<MatchingVector> bipartite_matchings(const FrameSequence& seq, const BipartiteConfig& cfg) {
    const auto fixed = BipartiteConfig::fixed(resolve_gate_cost(seq, cfg));
    std::vector<MatchingVector> out;
    out.reserve(seq.pair_count());
    for (std::size_t k = 0; k < seq.pair_count(); ++k) out.push_back(solve_bmcf(seq.frame(k), seq.frame(k + 1), fixed));
    return out;
}

TrackResult track(const FrameSequence& seq, const TrackerConfig& cfg) {
    cfg.validate();
    if (seq.frame_count() < 2) throw InvalidInput("tracking needs at least two frames");
    const std::size_t pairs = seq.pair_count();

    TrackResult out;
    auto& diag = out.diagnostics;
    diag.gate_cost = resolve_gate_cost(seq, cfg.bipartite);
    out.bipartite = bipartite_matchings(seq, BipartiteConfig::fixed(diag.gate_cost));
    for (const auto& m : out.bipartite) diag.d_star.push_back(count_disappeared(m));

    if (cfg.sigma.fixed) {
        diag.sigmas.assign(pairs, *cfg.sigma.fixed);
        diag.pooled_sigma = *cfg.sigma.fixed;
    } else {
        const auto est = estimate_sigma(seq, out.bipartite, cfg.sigma.mode, cfg.sigma_floor, cfg.fallback_sigma);
        diag.sigmas = est.per_pair;
        diag.pooled_sigma = est.pooled;
        diag.sigma_fallback = est.fallback;
    }

    if (cfg.lambda_event) {
        diag.lambda_event = *cfg.lambda_event;
    } else {
        if (!std::isfinite(diag.gate_cost)) {
            throw InvalidConfiguration("automatic event penalty needs a finite gate cost");
        }
        diag.lambda_event = event_penalty_at_gate(diag.gate_cost, diag.pooled_sigma, seq.dt());
    }
    out.noise = NoiseModel{diag.sigmas, diag.lambda_event, cfg.sigma_floor};

    out.spaces.reserve(pairs);
    for (std::size_t k = 0; k < pairs; ++k) {
        out.spaces.push_back(build_reduced_space(seq.frame(k), seq.frame(k + 1), diag.d_star[k], cfg.reduced));
        if (out.spaces.back().size() > cfg.space_cap) {
            throw CapacityExceeded("reduced space for pair " + std::to_string(k) + " exceeds the space cap");
        }
        diag.space_sizes.push_back(out.spaces.back().size());
    }

    auto solution = solve_dp(seq, out.spaces, out.noise, cfg.dp);
    diag.triple_evaluations = solution.triple_evaluations;
    diag.score = solution.score;
    out.matchings = std::move(solution.matchings);
    out.trajectories = assemble_trajectories(seq, out.matchings);
    return out;
}

}  // namespace trimatch
