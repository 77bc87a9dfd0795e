#include "trimatch/core.hpp"
#include "trimatch/errors.hpp"

#include <algorithm>
#include <string>

namespace trimatch {

TrajectorySet::TrajectorySet(std::vector<Track> tracks) : tracks_(std::move(tracks)) {
    for (const auto& t : tracks_) {
        if (t.empty()) throw InvalidInput("empty track");
        for (std::size_t s = 1; s < t.size(); ++s) {
            if (t[s].frame != t[s - 1].frame + 1) throw InvalidInput("track frames are not consecutive");
        }
    }
    std::sort(tracks_.begin(), tracks_.end(), [](const Track& a, const Track& b) { return a.front() < b.front(); });
    for (std::size_t i = 1; i < tracks_.size(); ++i) {
        if (tracks_[i].front() == tracks_[i - 1].front()) throw InvalidInput("two tracks share a detection");
    }
}

void TrajectorySet::validate_against(const FrameSequence& seq) const {
    std::vector<std::vector<bool>> seen(seq.frame_count());
    for (std::size_t k = 0; k < seq.frame_count(); ++k) seen[k].assign(seq.object_count(k), false);
    for (const auto& t : tracks_) {
        for (const auto& d : t) {
            if (d.frame >= seq.frame_count() || d.index >= seq.object_count(d.frame)) {
                throw InvalidInput("track references a detection outside the sequence");
            }
            if (seen[d.frame][d.index]) {
                throw InvalidInput("detection (" + std::to_string(d.frame) + ", " + std::to_string(d.index) +
                                   ") belongs to two tracks");
            }
            seen[d.frame][d.index] = true;
        }
    }
    for (std::size_t k = 0; k < seen.size(); ++k) {
        for (std::size_t i = 0; i < seen[k].size(); ++i) {
            if (!seen[k][i]) {
                throw InvalidInput("detection (" + std::to_string(k) + ", " + std::to_string(i) +
                                   ") is not covered by any track");
            }
        }
    }
}

TrajectorySet assemble_trajectories(const FrameSequence& seq, std::span<const MatchingVector> matchings) {
    const std::size_t f = seq.frame_count();
    if (f == 0) {
        if (!matchings.empty()) throw InvalidInput("matchings given for an empty sequence");
        return {};
    }
    if (matchings.size() != f - 1) {
        throw InvalidInput("expected " + std::to_string(f - 1) + " matching vectors, got " +
                           std::to_string(matchings.size()));
    }

    std::vector<Track> tracks;
    // open[i]: index into `tracks` of the track currently ending at object i of frame k.
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < seq.object_count(0); ++i) {
        open.push_back(tracks.size());
        tracks.push_back({{0, i}});
    }
    for (std::size_t k = 0; k + 1 < f; ++k) {
        const auto& m = matchings[k];
        if (m.source_count() != seq.object_count(k) || m.target_count() != seq.object_count(k + 1)) {
            throw InvalidInput("matching " + std::to_string(k) + " does not fit frame sizes");
        }
        constexpr std::size_t kNone = static_cast<std::size_t>(-1);
        std::vector<std::size_t> next(seq.object_count(k + 1), kNone);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m.disappears(i)) continue;
            const auto j = static_cast<std::size_t>(m[i]);
            tracks[open[i]].push_back({k + 1, j});
            next[j] = open[i];
        }
        for (std::size_t j = 0; j < next.size(); ++j) {
            if (next[j] == kNone) {
                next[j] = tracks.size();
                tracks.push_back({{k + 1, j}});
            }
        }
        open = std::move(next);
    }
    return TrajectorySet(std::move(tracks));
}

std::vector<MatchingVector> trajectories_to_matchings(const FrameSequence& seq, const TrajectorySet& tracks) {
    tracks.validate_against(seq);
    const std::size_t f = seq.frame_count();
    std::vector<std::vector<MatchingVector::Entry>> entries(f == 0 ? 0 : f - 1);
    for (std::size_t k = 0; k + 1 < f; ++k) entries[k].assign(seq.object_count(k), MatchingVector::kDisappear);
    for (const auto& t : tracks.tracks()) {
        for (std::size_t s = 1; s < t.size(); ++s) {
            entries[t[s - 1].frame][t[s - 1].index] = static_cast<MatchingVector::Entry>(t[s].index);
        }
    }
    std::vector<MatchingVector> out;
    out.reserve(entries.size());
    for (std::size_t k = 0; k < entries.size(); ++k) out.emplace_back(std::move(entries[k]), seq.object_count(k + 1));
    return out;
}

}  // namespace trimatch
