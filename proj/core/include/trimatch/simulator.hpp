#pragma once

// Synthetic videos: cells seeded uniformly in a closed W x H region perform a
// velocity random walk, reflect off the region boundary, and are observed
// through a centred w x h window. Crossing the window border is an
// appearance or disappearance.

#include "trimatch/core.hpp"

#include <cstdint>
#include <vector>

namespace trimatch {

struct SimConfig {
    double region_width = 3400.0;   // W
    double region_height = 2560.0;  // H
    double window_width = 680.0;    // w
    double window_height = 512.0;   // h
    double expected_visible = 15.0; // N0
    double sigma = 1.0;
    std::size_t frames = 50;
    double dt = 1.0;
    std::uint64_t seed = 1;

    void validate() const;
    /// round(W H / (w h) * N0).
    std::size_t seeded_cells() const;
};

struct SimOutput {
    FrameSequence visible;
    std::vector<MatchingVector> truth_matchings;
    TrajectorySet truth_tracks;
    // hidden[k][c]: position of cell c at frame k in the closed region.
    std::vector<std::vector<Position>> hidden;
    // cell_ids[k][i]: cell behind visible object i of frame k.
    std::vector<std::vector<std::size_t>> cell_ids;
};

/// Fold a coordinate into [0, length] by mirror reflection, repeatedly if needed.
double reflect_into(double value, double length) noexcept;

SimOutput simulate(const SimConfig& cfg);

}  // namespace trimatch
