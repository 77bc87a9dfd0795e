#include "commands.hpp"

#include "trimatch/io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace trimatch::cli {
namespace {

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("trimatch_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    fs::path write(const std::string& name, const std::string& text) const {
        const fs::path p = dir_ / name;
        std::ofstream(p) << text;
        return p;
    }
    static std::string slurp(const fs::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    fs::path dir_;
};

TEST_F(CliTest, SimulateIsReproducible) {
    std::ostringstream err;
    ASSERT_EQ(cmd_simulate({std::nullopt, dir_ / "a", 17}, err), kOk) << err.str();
    ASSERT_EQ(cmd_simulate({std::nullopt, dir_ / "b", 17}, err), kOk) << err.str();
    for (const char* f : {"detections.csv", "truth.csv", "truth_matchings.txt", "metadata.json"}) {
        EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
    }
    const auto meta = nlohmann::json::parse(slurp(dir_ / "a" / "metadata.json"));
    EXPECT_EQ(meta["seeded_cells"], 375);
    EXPECT_EQ(meta["seed"], 17);
    const auto seq = read_detections(dir_ / "a" / "detections.csv");
    EXPECT_EQ(seq.frame_count(), 50u);
    std::ifstream in(dir_ / "a" / "detections.csv");
    std::string line;
    std::set<std::string> frames;
    while (std::getline(in, line)) {
        if (!line.empty() && std::isdigit(static_cast<unsigned char>(line[0]))) frames.insert(line.substr(0, line.find(',')));
    }
    EXPECT_EQ(frames.size(), 50u);
}

TEST_F(CliTest, SimulateRejectsInvalidConfig) {
    std::ostringstream err;
    const auto cfg = write("sim.cfg", "sigma = 0\n");
    EXPECT_EQ(cmd_simulate({cfg, dir_ / "out", std::nullopt}, err), kConfigError);
    const auto typo = write("typo.cfg", "sigmaa = 1\n");
    EXPECT_EQ(cmd_simulate({typo, dir_ / "out", std::nullopt}, err), kConfigError);
}

TEST_F(CliTest, TrackToyBipartite) {
    const auto input = write("toy.csv", "frame_index,x,y\n0,0,0\n0,10,0\n1,10.5,0\n1,0.5,0\n");
    TrackOptions opt;
    opt.input = input;
    opt.output = dir_ / "tracks.csv";
    opt.method = Method::Bmcf;
    opt.matchings = dir_ / "m.txt";
    std::ostringstream err;
    ASSERT_EQ(cmd_track(opt, err), kOk) << err.str();
    EXPECT_EQ(slurp(dir_ / "tracks.csv"),
              "# frames=2\ntrack_id,frame_index,x,y\n1,0,0,0\n1,1,0.5,0\n2,0,10,0\n2,1,10.5,0\n");
    EXPECT_EQ(slurp(dir_ / "m.txt"), "2 1\n");
    const auto diag = nlohmann::json::parse(slurp(dir_ / "tracks.json"));
    EXPECT_EQ(diag["method"], "bmcf");
    EXPECT_EQ(diag["tracks"], 2);
}

TEST_F(CliTest, LargerDeltaReportsLargerSpaces) {
    std::ostringstream err;
    ASSERT_EQ(cmd_simulate({std::nullopt, dir_ / "sim", 5}, err), kOk);
    TrackOptions opt;
    opt.input = dir_ / "sim" / "detections.csv";
    opt.output = dir_ / "d0.csv";
    opt.delta = 0;
    ASSERT_EQ(cmd_track(opt, err), kOk) << err.str();
    opt.output = dir_ / "d3.csv";
    opt.delta = 3;
    ASSERT_EQ(cmd_track(opt, err), kOk) << err.str();
    const auto d0 = nlohmann::json::parse(slurp(dir_ / "d0.json"));
    const auto d3 = nlohmann::json::parse(slurp(dir_ / "d3.json"));
    ASSERT_EQ(d0["space_sizes"].size(), d3["space_sizes"].size());
    bool strictly = false;
    for (std::size_t k = 0; k < d0["space_sizes"].size(); ++k) {
        EXPECT_LE(d0["space_sizes"][k].get<std::size_t>(), d3["space_sizes"][k].get<std::size_t>());
        strictly |= d0["space_sizes"][k] < d3["space_sizes"][k];
    }
    EXPECT_TRUE(strictly);
    EXPECT_EQ(d0["sigmas"].size(), 49u);
    EXPECT_GT(d3["triple_evaluations"].get<std::uint64_t>(), d0["triple_evaluations"].get<std::uint64_t>());
}

TEST_F(CliTest, MalformedRowGivesInputErrorWithLine) {
    const auto input = write("bad.csv", "0,1,2\n1,1,oops\n");
    TrackOptions opt;
    opt.input = input;
    opt.output = dir_ / "t.csv";
    std::ostringstream err;
    EXPECT_EQ(cmd_track(opt, err), kInputError);
    EXPECT_NE(err.str().find("line 2"), std::string::npos) << err.str();
}

TEST_F(CliTest, BadSigmaModeIsConfigError) {
    const auto input = write("ok.csv", "0,1,2\n1,1,3\n");
    TrackOptions opt;
    opt.input = input;
    opt.output = dir_ / "t.csv";
    opt.sigma_mode = "fixed:abc";
    std::ostringstream err;
    EXPECT_EQ(cmd_track(opt, err), kConfigError);
}

TEST_F(CliTest, EvaluateIdentityAndSwap) {
    const auto truth = write("truth.csv",
                             "track_id,frame_index,x,y\n1,0,0,0\n1,1,1,0\n1,2,2,0\n2,0,0,5\n2,1,1,5\n2,2,2,5\n");
    std::ostringstream err;
    ASSERT_EQ(cmd_evaluate({truth, truth, dir_ / "same.csv", std::nullopt, 1.0}, err), kOk) << err.str();
    const auto same = nlohmann::json::parse(slurp(dir_ / "same.json"));
    EXPECT_EQ(same["f_beta"], 1.0);
    EXPECT_EQ(same["path_identity"], true);
    EXPECT_EQ(slurp(dir_ / "same.csv"),
              "pair,pair_accuracy,pair_identity,coverage,cumulative_precision,cumulative_recall,cumulative_f_beta\n"
              "0,1,1,,1,1,1\n1,1,1,,1,1,1\n");

    // Tracks exchange partners between frames 1 and 2.
    const auto pred = write("pred.csv",
                            "track_id,frame_index,x,y\n1,0,0,0\n1,1,1,0\n1,2,2,5\n2,0,0,5\n2,1,1,5\n2,2,2,0\n");
    ASSERT_EQ(cmd_evaluate({pred, truth, dir_ / "swap.csv", std::nullopt, 1.0}, err), kOk) << err.str();
    const std::string report = slurp(dir_ / "swap.csv");
    EXPECT_NE(report.find("\n0,1,1,"), std::string::npos);
    EXPECT_NE(report.find("\n1,0,0,"), std::string::npos);
}

TEST_F(CliTest, EvaluateMissingFrameIsAnError) {
    const auto truth = write("truth.csv", "1,0,0,0\n1,1,1,0\n1,2,2,0\n");
    const auto pred = write("pred.csv", "1,0,0,0\n1,1,1,0\n");
    std::ostringstream err;
    EXPECT_EQ(cmd_evaluate({pred, truth, dir_ / "r.csv", std::nullopt, 1.0}, err), kInputError);
    EXPECT_NE(err.str().find("frame 2"), std::string::npos) << err.str();
}

TEST_F(CliTest, ExperimentShapeAndDeterminism) {
    const auto cfg = write("grid.cfg", "N0 = 15\nsigma = 1\nreplicates = 2\nframes = 8\nmethods = bmcf, tri\n"
                                       "deltas = 0,1,2,3\nseed = 4\n");
    ExperimentOptions opt;
    opt.config = cfg;
    opt.output_dir = dir_ / "e1";
    opt.threads = 2;
    std::ostringstream err;
    ASSERT_EQ(cmd_experiment(opt, err), kOk) << err.str();
    opt.output_dir = dir_ / "e2";
    opt.threads = 1;
    ASSERT_EQ(cmd_experiment(opt, err), kOk) << err.str();
    EXPECT_EQ(slurp(dir_ / "e1" / "runs.csv"), slurp(dir_ / "e2" / "runs.csv"));
    EXPECT_EQ(slurp(dir_ / "e1" / "aggregate.csv"), slurp(dir_ / "e2" / "aggregate.csv"));

    std::istringstream agg(slurp(dir_ / "e1" / "aggregate.csv"));
    std::string header;
    std::getline(agg, header);
    EXPECT_NE(header.find("eval_ratio_vs_prev"), std::string::npos);
    EXPECT_NE(header.find("theoretical_eval_ratio"), std::string::npos);
    std::vector<std::string> rows;
    for (std::string line; std::getline(agg, line);) rows.push_back(line);
    ASSERT_EQ(rows.size(), 5u);
    EXPECT_EQ(rows[0].rfind("15,1,bmcf,,2,", 0), 0u) << rows[0];
    EXPECT_NE(rows[2].find(",9,"), std::string::npos) << rows[2];
    EXPECT_NE(rows[3].find(",2.777777778,"), std::string::npos) << rows[3];
    EXPECT_NE(rows[4].find(",1.96,"), std::string::npos) << rows[4];

    std::istringstream runs(slurp(dir_ / "e1" / "runs.csv"));
    std::size_t n = 0;
    for (std::string line; std::getline(runs, line);) ++n;
    EXPECT_EQ(n, 1u + 2u * 5u);
}

TEST(Theory, EvalRatios) {
    EXPECT_DOUBLE_EQ(theoretical_eval_ratio(1), 9.0);
    EXPECT_NEAR(theoretical_eval_ratio(2), 2.78, 0.005);
    EXPECT_NEAR(theoretical_eval_ratio(3), 1.96, 1e-12);
}

TEST(CommandLine, UsageErrors) {
    const char* no_sub[] = {"trimatch"};
    EXPECT_EQ(run(1, const_cast<char**>(no_sub)), kUsage);
    const char* bad_method[] = {"trimatch", "track", "--input", "x", "--output", "y", "--method", "lap"};
    EXPECT_EQ(run(8, const_cast<char**>(bad_method)), kUsage);
    const char* missing[] = {"trimatch", "track", "--input", "/nonexistent/in.csv", "--output", "/tmp/never.csv"};
    EXPECT_EQ(run(6, const_cast<char**>(missing)), kInputError);
}

}  // namespace
}  // namespace trimatch::cli
