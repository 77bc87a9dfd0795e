#include "trimatch/simulator.hpp"
#include "trimatch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace trimatch {

void SimConfig::validate() const {
    if (!(window_width > 0.0 && window_height > 0.0)) throw InvalidConfiguration("window must have positive size");
    if (!(region_width >= window_width && region_height >= window_height)) {
        throw InvalidConfiguration("closed region must contain the window");
    }
    if (!(expected_visible >= 1.0)) throw InvalidConfiguration("N0 must be at least 1");
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidConfiguration("sigma must be positive");
    if (frames < 2) throw InvalidConfiguration("simulation needs at least two frames");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidConfiguration("dt must be positive");
}

std::size_t SimConfig::seeded_cells() const {
    return static_cast<std::size_t>(
        std::llround(region_width * region_height / (window_width * window_height) * expected_visible));
}

double reflect_into(double value, double length) noexcept {
    if (length <= 0.0) return 0.0;
    const double period = 2.0 * length;
    double r = std::fmod(value, period);
    if (r < 0.0) r += period;
    return r > length ? period - r : r;
}

SimOutput simulate(const SimConfig& cfg) {
    cfg.validate();
    std::mt19937_64 motion_rng(cfg.seed);
    // Labelling uses its own stream so the motion does not depend on it.
    std::mt19937_64 label_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> ux(0.0, cfg.region_width);
    std::uniform_real_distribution<double> uy(0.0, cfg.region_height);
    std::normal_distribution<double> noise(0.0, cfg.sigma);

    const std::size_t cells = cfg.seeded_cells();
    SimOutput out;
    out.hidden.resize(cfg.frames);
    auto& first = out.hidden[0];
    first.reserve(cells);
    for (std::size_t c = 0; c < cells; ++c) {
        const double x = ux(motion_rng);
        const double y = uy(motion_rng);
        first.push_back({x, y});
    }

    // Cells in the first frame are still.
    std::vector<Velocity> velocity(cells);
    for (std::size_t k = 1; k < cfg.frames; ++k) {
        const auto& prev = out.hidden[k - 1];
        auto& cur = out.hidden[k];
        cur.resize(cells);
        for (std::size_t c = 0; c < cells; ++c) {
            const double ex = noise(motion_rng);
            const double ey = noise(motion_rng);
            cur[c].x = reflect_into(prev[c].x + (velocity[c].vx + ex) * cfg.dt, cfg.region_width);
            cur[c].y = reflect_into(prev[c].y + (velocity[c].vy + ey) * cfg.dt, cfg.region_height);
            velocity[c] = Velocity::between(prev[c], cur[c], cfg.dt);
        }
    }

    const double x0 = 0.5 * (cfg.region_width - cfg.window_width);
    const double y0 = 0.5 * (cfg.region_height - cfg.window_height);
    const auto inside = [&](const Position& p) {
        return p.x >= x0 && p.x < x0 + cfg.window_width && p.y >= y0 && p.y < y0 + cfg.window_height;
    };

    constexpr std::size_t kHidden = static_cast<std::size_t>(-1);
    std::vector<std::vector<std::size_t>> slot(cfg.frames, std::vector<std::size_t>(cells, kHidden));
    std::vector<Frame> frames(cfg.frames);
    out.cell_ids.resize(cfg.frames);
    for (std::size_t k = 0; k < cfg.frames; ++k) {
        auto& ids = out.cell_ids[k];
        for (std::size_t c = 0; c < cells; ++c) {
            if (inside(out.hidden[k][c])) ids.push_back(c);
        }
        std::shuffle(ids.begin(), ids.end(), label_rng);
        for (std::size_t i = 0; i < ids.size(); ++i) {
            slot[k][ids[i]] = i;
            frames[k].push_back(out.hidden[k][ids[i]]);
        }
    }
    out.visible = FrameSequence(std::move(frames), cfg.dt);

    for (std::size_t k = 0; k + 1 < cfg.frames; ++k) {
        std::vector<MatchingVector::Entry> entries;
        entries.reserve(out.cell_ids[k].size());
        for (std::size_t c : out.cell_ids[k]) {
            const std::size_t j = slot[k + 1][c];
            entries.push_back(j == kHidden ? MatchingVector::kDisappear : static_cast<MatchingVector::Entry>(j));
        }
        out.truth_matchings.emplace_back(std::move(entries), out.cell_ids[k + 1].size());
    }
    out.truth_tracks = assemble_trajectories(out.visible, out.truth_matchings);
    return out;
}

}  // namespace trimatch
