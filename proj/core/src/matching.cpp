#include "trimatch/core.hpp"
#include "trimatch/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace trimatch {

FrameSequence::FrameSequence(std::vector<Frame> frames, double dt) : frames_(std::move(frames)), dt_(dt) {
    if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
        throw InvalidInput("frame interval must be positive and finite");
    }
    for (std::size_t k = 0; k < frames_.size(); ++k) {
        for (const auto& p : frames_[k]) {
            if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
                throw InvalidInput("non-finite coordinate in frame " + std::to_string(k));
            }
        }
    }
}

std::size_t FrameSequence::detection_count() const noexcept {
    std::size_t total = 0;
    for (const auto& f : frames_) total += f.size();
    return total;
}

std::vector<std::size_t> FrameSequence::counts() const {
    std::vector<std::size_t> n;
    n.reserve(frames_.size());
    for (const auto& f : frames_) n.push_back(f.size());
    return n;
}

FrameSequence FrameSequence::prefix(std::size_t frame_count) const {
    frame_count = std::min(frame_count, frames_.size());
    return FrameSequence(std::vector<Frame>(frames_.begin(), frames_.begin() + static_cast<std::ptrdiff_t>(frame_count)), dt_);
}

MatchingVector::MatchingVector(std::vector<Entry> entries, std::size_t target_count)
    : entries_(std::move(entries)), target_count_(target_count) {
    std::vector<bool> used(target_count_, false);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const Entry e = entries_[i];
        if (e == kDisappear) continue;
        if (e < 0 || static_cast<std::size_t>(e) >= target_count_) {
            throw InvalidInput("matching entry " + std::to_string(i) + " = " + std::to_string(e) +
                               " outside target range of " + std::to_string(target_count_));
        }
        if (used[static_cast<std::size_t>(e)]) {
            throw InvalidInput("matching target " + std::to_string(e) + " used twice");
        }
        used[static_cast<std::size_t>(e)] = true;
    }
}

MatchingVector MatchingVector::all_disappear(std::size_t source_count, std::size_t target_count) {
    return MatchingVector(std::vector<Entry>(source_count, kDisappear), target_count);
}

std::size_t MatchingVector::disappear_count() const noexcept {
    return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), kDisappear));
}

std::vector<MatchingVector::Entry> MatchingVector::predecessors() const {
    std::vector<Entry> pred(target_count_, kDisappear);
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] != kDisappear) pred[static_cast<std::size_t>(entries_[i])] = static_cast<Entry>(i);
    }
    return pred;
}

MatchingVector MatchingVector::exchanged(std::size_t i, std::size_t j) const {
    MatchingVector out = *this;
    std::swap(out.entries_.at(i), out.entries_.at(j));
    return out;
}

std::strong_ordering operator<=>(const MatchingVector& a, const MatchingVector& b) {
    if (auto c = std::lexicographical_compare_three_way(a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
                                                        b.entries_.end());
        c != 0) {
        return c;
    }
    return a.target_count_ <=> b.target_count_;
}

BinaryMatrix matching_to_matrix(const MatchingVector& m, std::size_t target_count) {
    BinaryMatrix out{m.size(), target_count, std::vector<std::uint8_t>(m.size() * target_count, 0)};
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m.disappears(i)) continue;
        const auto j = static_cast<std::size_t>(m[i]);
        if (j >= target_count) throw InvalidInput("matching entry outside matrix columns");
        out(i, j) = 1;
    }
    return out;
}

MatchingVector matrix_to_matching(const BinaryMatrix& matrix) {
    if (matrix.cells.size() != matrix.rows * matrix.cols) throw InvalidInput("matrix storage size mismatch");
    std::vector<MatchingVector::Entry> entries(matrix.rows, MatchingVector::kDisappear);
    for (std::size_t i = 0; i < matrix.rows; ++i) {
        int row_sum = 0;
        for (std::size_t j = 0; j < matrix.cols; ++j) {
            if (matrix(i, j) > 1) throw InvalidInput("matrix entries must be 0 or 1");
            if (matrix(i, j)) {
                entries[i] = static_cast<MatchingVector::Entry>(j);
                ++row_sum;
            }
        }
        if (row_sum > 1) throw InvalidInput("row " + std::to_string(i) + " sums above one");
    }
    // Column sums above one surface as duplicate targets.
    return MatchingVector(std::move(entries), matrix.cols);
}

CandidateSpace::CandidateSpace(std::vector<MatchingVector> candidates, std::size_t source_count,
                               std::size_t target_count)
    : candidates_(std::move(candidates)), source_count_(source_count), target_count_(target_count) {
    for (const auto& m : candidates_) {
        if (m.source_count() != source_count_ || m.target_count() != target_count_) {
            throw InvalidInput("candidate dimensions differ from the space dimensions");
        }
    }
    std::sort(candidates_.begin(), candidates_.end());
    candidates_.erase(std::unique(candidates_.begin(), candidates_.end()), candidates_.end());
}

CandidateSpace CandidateSpace::from_exchanges(
    std::size_t source_count, std::size_t target_count,
    const std::vector<std::pair<MatchingVector, std::vector<std::pair<std::uint32_t, std::uint32_t>>>>& groups) {
    std::vector<MatchingVector> all;
    for (const auto& [base, pairs] : groups) {
        all.push_back(base);
        for (const auto& [i, j] : pairs) all.push_back(base.exchanged(i, j));
    }
    const std::size_t expected = all.size();
    CandidateSpace space(std::move(all), source_count, target_count);
    if (space.size() != expected) throw InvalidInput("exchange groups produce duplicate candidates");

    space.groups_.reserve(groups.size());
    for (const auto& [base, pairs] : groups) {
        ExchangeGroup g{base, space.rank_of(base), {}};
        g.exchanges.reserve(pairs.size());
        for (const auto& [i, j] : pairs) g.exchanges.push_back({i, j, space.rank_of(base.exchanged(i, j))});
        space.groups_.push_back(std::move(g));
    }
    return space;
}

bool CandidateSpace::contains(const MatchingVector& m) const { return rank_of(m) < candidates_.size(); }

std::size_t CandidateSpace::rank_of(const MatchingVector& m) const {
    auto it = std::lower_bound(candidates_.begin(), candidates_.end(), m);
    if (it == candidates_.end() || *it != m) return candidates_.size();
    return static_cast<std::size_t>(it - candidates_.begin());
}

bool CandidateSpace::is_subset_of(const CandidateSpace& other) const {
    return std::includes(other.candidates_.begin(), other.candidates_.end(), candidates_.begin(), candidates_.end());
}

}  // namespace trimatch
