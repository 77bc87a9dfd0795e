#include "trimatch/errors.hpp"
#include "trimatch/io.hpp"
#include "trimatch/simulator.hpp"

#include "instances.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace trimatch {
namespace {

constexpr auto D = MatchingVector::kDisappear;

TEST(Detections, ParsesWithHeaderCommentsAndGaps) {
    std::istringstream in(
        "# a comment\n"
        "frame_index,x,y\n"
        "0, 1.5, 2\n"
        "0,3,-4e1\n"
        "\n"
        "2,7,8\n"
        "# frames=4\n");
    const auto seq = read_detections(in);
    ASSERT_EQ(seq.frame_count(), 4u);
    EXPECT_EQ(seq.counts(), (std::vector<std::size_t>{2, 0, 1, 0}));
    EXPECT_EQ(seq.frame(0)[1], (Position{3, -40}));
}

TEST(Detections, MalformedRowNamesTheLine) {
    std::istringstream in("frame_index,x,y\n0,1,2\n1,abc,3\n");
    try {
        read_detections(in);
        FAIL() << "expected a parse error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 3u);
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
    std::istringstream fields("0,1\n");
    EXPECT_THROW(read_detections(fields), ParseError);
    std::istringstream negative("-1,1,2\n");
    EXPECT_THROW(read_detections(negative), ParseError);
    std::istringstream nonfinite("0,nan,2\n");
    EXPECT_THROW(read_detections(nonfinite), ParseError);
    std::istringstream declared("# frames=1\n3,1,2\n");
    EXPECT_THROW(read_detections(declared), ParseError);
}

TEST(Detections, RoundTripIsExact) {
    SimConfig cfg;
    cfg.frames = 8;
    const auto sim = simulate(cfg);
    std::stringstream buf;
    write_detections(buf, sim.visible);
    const auto back = read_detections(buf);
    EXPECT_EQ(back.frames(), sim.visible.frames());
}

TEST(Tracks, RoundTripThroughRows) {
    SimConfig cfg;
    cfg.frames = 10;
    cfg.seed = 3;
    const auto sim = simulate(cfg);
    std::stringstream buf;
    write_tracks(buf, sim.visible, sim.truth_tracks);
    const auto file = read_tracks(buf);
    EXPECT_EQ(file.declared_frames, 10u);
    const auto seq = detections_from_track_rows(file.rows, file.declared_frames);
    const auto tracks = tracks_from_rows(seq, file.rows);
    EXPECT_EQ(tracks.size(), sim.truth_tracks.size());
    // Same detections grouped the same way, possibly under a different labelling.
    const auto direct = tracks_from_rows(sim.visible, file.rows);
    EXPECT_EQ(direct, sim.truth_tracks);
}

TEST(Tracks, UnknownDetectionIsReported) {
    const FrameSequence seq({{{0, 0}}, {{1, 1}}});
    std::istringstream in("track_id,frame_index,x,y\n1,0,0,0\n1,1,1,2\n");
    const auto file = read_tracks(in);
    EXPECT_THROW(tracks_from_rows(seq, file.rows), InvalidInput);
    std::istringstream partial("1,0,0,0\n");
    EXPECT_THROW(tracks_from_rows(seq, read_tracks(partial).rows), InvalidInput);
    std::istringstream beyond("1,0,0,0\n1,1,1,1\n1,2,3,3\n");
    EXPECT_THROW(tracks_from_rows(seq, read_tracks(beyond).rows), InvalidInput);
}

TEST(Tracks, GapInTrackIsRejected) {
    const FrameSequence seq({{{0, 0}}, {{1, 1}}, {{2, 2}}});
    std::istringstream in("1,0,0,0\n1,2,2,2\n2,1,1,1\n");
    EXPECT_THROW(tracks_from_rows(seq, read_tracks(in).rows), InvalidInput);
}

TEST(Matchings, RoundTripOneBased) {
    const std::vector<MatchingVector> m{MatchingVector({1, D, 0}, 2), MatchingVector({D, D}, 0),
                                        MatchingVector({}, 3)};
    std::stringstream buf;
    write_matchings(buf, m);
    EXPECT_EQ(buf.str(), "2 -1 1\n-1 -1\n\n");
    const auto back = read_matchings(buf, std::vector<std::size_t>{3, 2, 0, 3});
    EXPECT_EQ(back, m);
}

TEST(Matchings, RejectsBadLines) {
    const std::vector<std::size_t> counts{2, 2};
    std::stringstream dup("1 1\n");
    EXPECT_THROW(read_matchings(dup, counts), ParseError);
    std::stringstream range("3 1\n");
    EXPECT_THROW(read_matchings(range, counts), ParseError);
    std::stringstream zero("0 1\n");
    EXPECT_THROW(read_matchings(zero, counts), ParseError);
    std::stringstream shortline("1\n");
    EXPECT_THROW(read_matchings(shortline, counts), ParseError);
    std::stringstream extra("1 2\n2 1\n");
    EXPECT_THROW(read_matchings(extra, counts), ParseError);
}

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(format_coordinate(0.1), "0.1");
    EXPECT_EQ(format_coordinate(3.0), "3");
    const double v = 1.0 / 3.0;
    EXPECT_EQ(std::stod(format_coordinate(v)), v);
}

}  // namespace
}  // namespace trimatch
