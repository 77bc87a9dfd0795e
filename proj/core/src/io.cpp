#include "trimatch/io.hpp"
#include "trimatch/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <string_view>

namespace trimatch {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(std::string_view field, std::size_t line, const char* what) {
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
    }
    if (!std::isfinite(v)) throw ParseError(line, std::string("non-finite ") + what);
    return v;
}

long long parse_integer(std::string_view field, std::size_t line, const char* what) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
        throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
    }
    return v;
}

std::size_t parse_frame(std::string_view field, std::size_t line) {
    const long long v = parse_integer(field, line, "frame index");
    if (v < 0) throw ParseError(line, "negative frame index");
    return static_cast<std::size_t>(v);
}

// Calls `row(fields, line_no)` for each data line of a row format. Returns the
// frame count declared by a "# frames=N" directive, or 0.
template <class Row>
std::size_t for_each_row(std::istream& in, std::span<const std::string_view> header, Row&& row) {
    std::string text;
    std::size_t line = 0;
    std::size_t declared = 0;
    bool seen_data = false;
    while (std::getline(in, text)) {
        ++line;
        const std::string_view s = trim(text);
        if (s.empty()) continue;
        if (s.front() == '#') {
            const std::string_view body = trim(s.substr(1));
            constexpr std::string_view key = "frames=";
            if (body.substr(0, key.size()) == key) {
                const long long n = parse_integer(trim(body.substr(key.size())), line, "frame count");
                if (n < 0) throw ParseError(line, "negative frame count");
                declared = static_cast<std::size_t>(n);
            }
            continue;
        }
        const auto fields = split(s, ',');
        if (!seen_data && std::equal(fields.begin(), fields.end(), header.begin(), header.end())) {
            seen_data = true;
            continue;
        }
        seen_data = true;
        if (fields.size() != header.size()) {
            throw ParseError(line, "expected " + std::to_string(header.size()) + " fields, got " +
                                       std::to_string(fields.size()));
        }
        row(fields, line);
    }
    if (in.bad()) throw ParseError(0, "read error");
    return declared;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open " + path.string());
    return in;
}

}  // namespace

std::string format_coordinate(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

FrameSequence read_detections(std::istream& in, double dt) {
    static constexpr std::string_view header[] = {"frame_index", "x", "y"};
    std::vector<Frame> frames;
    const std::size_t declared = for_each_row(in, header, [&](const auto& f, std::size_t line) {
        const std::size_t k = parse_frame(f[0], line);
        const Position p{parse_double(f[1], line, "x coordinate"), parse_double(f[2], line, "y coordinate")};
        if (k >= frames.size()) frames.resize(k + 1);
        frames[k].push_back(p);
    });
    if (declared > 0) {
        if (declared < frames.size()) {
            throw ParseError(0, "declared frame count " + std::to_string(declared) + " is below the highest frame index");
        }
        frames.resize(declared);
    }
    return FrameSequence(std::move(frames), dt);
}

FrameSequence read_detections(const std::filesystem::path& path, double dt) {
    auto in = open_input(path);
    return read_detections(in, dt);
}

void write_detections(std::ostream& out, const FrameSequence& seq) {
    out << "# frames=" << seq.frame_count() << '\n' << "frame_index,x,y\n";
    for (std::size_t k = 0; k < seq.frame_count(); ++k) {
        for (const auto& p : seq.frame(k)) out << k << ',' << format_coordinate(p.x) << ',' << format_coordinate(p.y) << '\n';
    }
}

TrackFile read_tracks(std::istream& in) {
    static constexpr std::string_view header[] = {"track_id", "frame_index", "x", "y"};
    TrackFile file;
    auto& rows = file.rows;
    file.declared_frames = for_each_row(in, header, [&](const auto& f, std::size_t line) {
        TrackRow r;
        r.track_id = parse_integer(f[0], line, "track id");
        r.frame = parse_frame(f[1], line);
        r.position = {parse_double(f[2], line, "x coordinate"), parse_double(f[3], line, "y coordinate")};
        r.line = line;
        rows.push_back(r);
    });
    return file;
}

TrackFile read_tracks(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_tracks(in);
}

void write_tracks(std::ostream& out, const FrameSequence& seq, const TrajectorySet& tracks) {
    out << "# frames=" << seq.frame_count() << '\n' << "track_id,frame_index,x,y\n";
    for (std::size_t t = 0; t < tracks.size(); ++t) {
        for (const auto& d : tracks[t]) {
            const Position& p = seq.frame(d.frame).at(d.index);
            out << t + 1 << ',' << d.frame << ',' << format_coordinate(p.x) << ',' << format_coordinate(p.y) << '\n';
        }
    }
}

FrameSequence detections_from_track_rows(std::span<const TrackRow> rows, std::size_t frame_count, double dt) {
    std::vector<Frame> frames(frame_count);
    for (const auto& r : rows) {
        if (r.frame >= frames.size()) frames.resize(r.frame + 1);
        frames[r.frame].push_back(r.position);
    }
    return FrameSequence(std::move(frames), dt);
}

TrajectorySet tracks_from_rows(const FrameSequence& seq, std::span<const TrackRow> rows) {
    using Key = std::pair<double, double>;
    std::vector<std::map<Key, std::vector<std::size_t>>> lookup(seq.frame_count());
    for (std::size_t k = 0; k < seq.frame_count(); ++k) {
        const auto& frame = seq.frame(k);
        // Reverse so that pop_back hands out duplicates in frame order.
        for (std::size_t i = frame.size(); i-- > 0;) lookup[k][{frame[i].x, frame[i].y}].push_back(i);
    }

    std::map<long long, Track> by_id;
    std::vector<long long> order;
    for (const auto& r : rows) {
        if (r.frame >= seq.frame_count()) {
            throw InvalidInput("line " + std::to_string(r.line) + ": frame " + std::to_string(r.frame) +
                               " is not part of the detections");
        }
        auto it = lookup[r.frame].find({r.position.x, r.position.y});
        if (it == lookup[r.frame].end() || it->second.empty()) {
            throw InvalidInput("line " + std::to_string(r.line) + ": no detection at (" +
                               format_coordinate(r.position.x) + ", " + format_coordinate(r.position.y) +
                               ") in frame " + std::to_string(r.frame));
        }
        auto [track, inserted] = by_id.try_emplace(r.track_id);
        if (inserted) order.push_back(r.track_id);
        track->second.push_back({r.frame, it->second.back()});
        it->second.pop_back();
    }
    for (std::size_t k = 0; k < seq.frame_count(); ++k) {
        for (const auto& [pos, left] : lookup[k]) {
            if (!left.empty()) {
                throw InvalidInput("frame " + std::to_string(k) + ": detection (" + format_coordinate(pos.first) +
                                   ", " + format_coordinate(pos.second) + ") is missing from the tracks");
            }
        }
    }

    std::vector<Track> tracks;
    tracks.reserve(order.size());
    for (long long id : order) {
        Track t = std::move(by_id[id]);
        std::stable_sort(t.begin(), t.end(), [](const Detection& a, const Detection& b) { return a.frame < b.frame; });
        tracks.push_back(std::move(t));
    }
    TrajectorySet set(std::move(tracks));
    set.validate_against(seq);
    return set;
}

std::vector<MatchingVector> read_matchings(std::istream& in, std::span<const std::size_t> frame_counts) {
    if (frame_counts.empty()) throw InvalidInput("matchings need at least one frame");
    std::vector<MatchingVector> out;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        const std::string_view s = trim(text);
        if (!s.empty() && s.front() == '#') continue;
        const std::size_t k = out.size();
        if (k + 1 >= frame_counts.size()) {
            if (s.empty()) continue;
            throw ParseError(line, "more matching lines than frame pairs");
        }
        std::vector<MatchingVector::Entry> entries;
        std::size_t pos = 0;
        while (pos < s.size()) {
            const auto end = s.find_first_of(" \t", pos);
            const auto token = s.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
            if (!token.empty()) {
                const long long v = parse_integer(token, line, "matching entry");
                if (v == -1) {
                    entries.push_back(MatchingVector::kDisappear);
                } else if (v >= 1 && static_cast<std::size_t>(v) <= frame_counts[k + 1]) {
                    entries.push_back(static_cast<MatchingVector::Entry>(v - 1));
                } else {
                    throw ParseError(line, "matching entry " + std::string(token) + " out of range");
                }
            }
            if (end == std::string_view::npos) break;
            pos = end + 1;
        }
        if (entries.size() != frame_counts[k]) {
            throw ParseError(line, "expected " + std::to_string(frame_counts[k]) + " entries, got " +
                                       std::to_string(entries.size()));
        }
        try {
            out.emplace_back(std::move(entries), frame_counts[k + 1]);
        } catch (const InvalidInput& e) {
            throw ParseError(line, e.what());
        }
    }
    if (out.size() + 1 != frame_counts.size()) {
        throw ParseError(0, "expected " + std::to_string(frame_counts.size() - 1) + " matching lines, got " +
                                std::to_string(out.size()));
    }
    return out;
}

void write_matchings(std::ostream& out, std::span<const MatchingVector> matchings) {
    for (const auto& m : matchings) {
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i > 0) out << ' ';
            out << (m.disappears(i) ? -1 : m[i] + 1);
        }
        out << '\n';
    }
}

}  // namespace trimatch
