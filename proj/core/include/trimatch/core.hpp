#pragma once

// Domain types shared by every module: detections, frames, matching vectors,
// trajectories and candidate spaces.
//
// Object indices are 0-based in memory. External formats use 1-based indices
// and -1 for a disappearance, see io.hpp.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace trimatch {

struct Position {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Position&, const Position&) = default;
};

/// Displacement per frame interval. Always derived from two positions.
struct Velocity {
    double vx = 0.0;
    double vy = 0.0;

    static Velocity between(const Position& from, const Position& to, double dt) noexcept {
        return {(to.x - from.x) / dt, (to.y - from.y) / dt};
    }
};

inline double squared_distance(const Position& a, const Position& b) noexcept {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

using Frame = std::vector<Position>;

/// Per-frame detections plus the frame interval. The labelling of objects inside
/// a frame is arbitrary but fixed once constructed.
class FrameSequence {
public:
    FrameSequence() = default;
    explicit FrameSequence(std::vector<Frame> frames, double dt = 1.0);

    std::size_t frame_count() const noexcept { return frames_.size(); }
    std::size_t pair_count() const noexcept { return frames_.empty() ? 0 : frames_.size() - 1; }
    std::size_t object_count(std::size_t frame) const { return frames_.at(frame).size(); }
    std::size_t detection_count() const noexcept;

    const Frame& frame(std::size_t k) const { return frames_.at(k); }
    const std::vector<Frame>& frames() const noexcept { return frames_; }
    double dt() const noexcept { return dt_; }

    /// Object counts n_k for every frame.
    std::vector<std::size_t> counts() const;

    /// First `frame_count` frames (same dt).
    FrameSequence prefix(std::size_t frame_count) const;

private:
    std::vector<Frame> frames_;
    double dt_ = 1.0;
};

/// Association of the objects of frame k with those of frame k+1.
///
/// Entry i is the 0-based index of the matched object in frame k+1, or
/// `kDisappear`. Non-sentinel entries are distinct and below `target_count()`;
/// both are checked at construction.
class MatchingVector {
public:
    using Entry = std::int32_t;
    static constexpr Entry kDisappear = -1;

    MatchingVector() = default;
    MatchingVector(std::vector<Entry> entries, std::size_t target_count);
    MatchingVector(std::initializer_list<Entry> entries, std::size_t target_count)
        : MatchingVector(std::vector<Entry>(entries), target_count) {}

    /// Every object disappears.
    static MatchingVector all_disappear(std::size_t source_count, std::size_t target_count);

    std::size_t size() const noexcept { return entries_.size(); }
    std::size_t source_count() const noexcept { return entries_.size(); }
    std::size_t target_count() const noexcept { return target_count_; }
    Entry operator[](std::size_t i) const { return entries_[i]; }
    std::span<const Entry> entries() const noexcept { return entries_; }

    bool disappears(std::size_t i) const { return entries_[i] == kDisappear; }

    std::size_t disappear_count() const noexcept;
    std::size_t matched_count() const noexcept { return size() - disappear_count(); }
    /// Objects of frame k+1 not reached by any entry.
    std::size_t appear_count() const noexcept { return target_count_ - matched_count(); }

    /// Inverse map: for every object of frame k+1, its source index or kDisappear.
    std::vector<Entry> predecessors() const;

    /// Copy with positions i and j exchanged.
    MatchingVector exchanged(std::size_t i, std::size_t j) const;

    friend bool operator==(const MatchingVector&, const MatchingVector&) = default;
    /// Lexicographic on entries (kDisappear sorts first), then by target count.
    friend std::strong_ordering operator<=>(const MatchingVector& a, const MatchingVector& b);

private:
    std::vector<Entry> entries_;
    std::size_t target_count_ = 0;
};

/// Number of disappearance entries.
inline std::size_t count_disappeared(const MatchingVector& m) noexcept { return m.disappear_count(); }

/// Dense 0/1 matrix, row-major, `rows x cols`.
struct BinaryMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> cells;

    std::uint8_t operator()(std::size_t i, std::size_t j) const { return cells[i * cols + j]; }
    std::uint8_t& operator()(std::size_t i, std::size_t j) { return cells[i * cols + j]; }
};

/// Binary association matrix of `m` with `target_count` columns.
BinaryMatrix matching_to_matrix(const MatchingVector& m, std::size_t target_count);
/// Inverse of matching_to_matrix; rejects rows or columns summing above one.
MatchingVector matrix_to_matching(const BinaryMatrix& matrix);

struct Detection {
    std::size_t frame = 0;
    std::size_t index = 0;

    friend auto operator<=>(const Detection&, const Detection&) = default;
};

using Track = std::vector<Detection>;

/// Reconstructed paths. Tracks are stored in (start frame, start index) order.
class TrajectorySet {
public:
    TrajectorySet() = default;
    explicit TrajectorySet(std::vector<Track> tracks);

    std::size_t size() const noexcept { return tracks_.size(); }
    const std::vector<Track>& tracks() const noexcept { return tracks_; }
    const Track& operator[](std::size_t i) const { return tracks_[i]; }

    /// Checks disjointness, consecutive frames, and that every detection of
    /// `seq` is covered exactly once.
    void validate_against(const FrameSequence& seq) const;

    friend bool operator==(const TrajectorySet&, const TrajectorySet&) = default;

private:
    std::vector<Track> tracks_;
};

/// Build tracks from one matching vector per consecutive frame pair. A track
/// starts at every object not reached from the previous frame and ends at
/// every disappearance.
TrajectorySet assemble_trajectories(const FrameSequence& seq, std::span<const MatchingVector> matchings);

/// Inverse of assemble_trajectories for a partition of the detections of `seq`.
std::vector<MatchingVector> trajectories_to_matchings(const FrameSequence& seq, const TrajectorySet& tracks);

/// One exchanged pair of positions applied to a base vector, with the rank of
/// the resulting candidate inside its space.
struct Exchange {
    std::uint32_t first = 0;
    std::uint32_t second = 0;
    std::size_t rank = 0;
};

/// A base vector and the candidates obtained from it by single exchanges.
/// The base itself is a member of the space at `base_rank`.
struct ExchangeGroup {
    MatchingVector base;
    std::size_t base_rank = 0;
    std::vector<Exchange> exchanges;
};

/// Deduplicated, lexicographically sorted set of matching vectors for one
/// frame pair. Candidate rank (position in sorted order) is the tie-break key.
///
/// A space built from exchanges of base vectors may carry its exchange groups,
/// which lets the solver score members incrementally. Groups, when present,
/// partition the candidates.
class CandidateSpace {
public:
    CandidateSpace() = default;
    CandidateSpace(std::vector<MatchingVector> candidates, std::size_t source_count, std::size_t target_count);

    /// Build from bases and exchange pairs; duplicate candidates are rejected
    /// so the groups stay a partition.
    static CandidateSpace from_exchanges(
        std::size_t source_count, std::size_t target_count,
        const std::vector<std::pair<MatchingVector, std::vector<std::pair<std::uint32_t, std::uint32_t>>>>& groups);

    std::size_t size() const noexcept { return candidates_.size(); }
    bool empty() const noexcept { return candidates_.empty(); }
    std::size_t source_count() const noexcept { return source_count_; }
    std::size_t target_count() const noexcept { return target_count_; }

    const MatchingVector& operator[](std::size_t rank) const { return candidates_[rank]; }
    const std::vector<MatchingVector>& candidates() const noexcept { return candidates_; }
    auto begin() const noexcept { return candidates_.begin(); }
    auto end() const noexcept { return candidates_.end(); }

    bool contains(const MatchingVector& m) const;
    /// Rank of `m`, or size() when absent.
    std::size_t rank_of(const MatchingVector& m) const;

    bool has_exchange_groups() const noexcept { return !groups_.empty(); }
    const std::vector<ExchangeGroup>& exchange_groups() const noexcept { return groups_; }

    bool is_subset_of(const CandidateSpace& other) const;

private:
    std::vector<MatchingVector> candidates_;
    std::vector<ExchangeGroup> groups_;
    std::size_t source_count_ = 0;
    std::size_t target_count_ = 0;
};

}  // namespace trimatch
