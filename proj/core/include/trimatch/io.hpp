#pragma once

// Text formats.
//
//   detections:  frame_index,x,y            (0-based frames)
//   tracks:      track_id,frame_index,x,y   (1-based track ids)
//   matchings:   one line per frame pair, space-separated 1-based targets,
//                -1 for a disappearance
//
// Lines starting with '#' are ignored everywhere. In the row formats blank
// lines and a header line naming the columns are ignored too, frames without
// rows are empty frames, and a "# frames=N" line declares trailing empty
// frames. In the matching format a blank line is the matching of an empty
// frame.

#include "trimatch/core.hpp"

#include <filesystem>
#include <istream>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace trimatch {

/// Throws ParseError naming the offending line.
FrameSequence read_detections(std::istream& in, double dt = 1.0);
FrameSequence read_detections(const std::filesystem::path& path, double dt = 1.0);
void write_detections(std::ostream& out, const FrameSequence& seq);

struct TrackRow {
    long long track_id = 0;
    std::size_t frame = 0;
    Position position;
    std::size_t line = 0;  // source line, 0 when not read from text
};

struct TrackFile {
    std::vector<TrackRow> rows;
    std::size_t declared_frames = 0;  // from "# frames=N", else 0
};

TrackFile read_tracks(std::istream& in);
TrackFile read_tracks(const std::filesystem::path& path);
void write_tracks(std::ostream& out, const FrameSequence& seq, const TrajectorySet& tracks);

/// The detections carried by a track file, each frame in file order.
/// `frame_count` extends the sequence with trailing empty frames.
FrameSequence detections_from_track_rows(std::span<const TrackRow> rows, std::size_t frame_count = 0,
                                         double dt = 1.0);

/// Resolve rows to detections of `seq` by exact coordinates. Throws
/// InvalidInput when a row has no matching detection or a detection is left
/// uncovered.
TrajectorySet tracks_from_rows(const FrameSequence& seq, std::span<const TrackRow> rows);

std::vector<MatchingVector> read_matchings(std::istream& in, std::span<const std::size_t> frame_counts);
void write_matchings(std::ostream& out, std::span<const MatchingVector> matchings);

/// Shortest round-trip decimal form of a coordinate.
std::string format_coordinate(double v);

}  // namespace trimatch
