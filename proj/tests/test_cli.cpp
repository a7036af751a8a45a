#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "hopfsec_cli.hpp"

namespace fs = std::filesystem;
using hopfsec::cli::run_cli;
using nlohmann::json;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("hopfsec_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = dir_ / name;
    std::ofstream(path) << text;
    return path.string();
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return run_cli(std::move(args), out_, err_);
  }

  json out_json() const { return json::parse(out_.str()); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

const char* kCubeRoots = R"({"degree": 3, "coeffs": [[1,0],[0,0],[0,0],[-1,0]]})";
const char* kFermatFamily = R"({"degree": 3, "layers": [
  {"degree": 3, "coeffs": [[1,0],[0,0],[0,0],[1,0]]},
  {"degree": 2, "coeffs": [[1,0],[0,0],[1,0]]},
  {"degree": 1, "coeffs": [[1,0],[1,0]]}]})";

}  // namespace

TEST_F(CliTest, RootsOfUnity) {
  EXPECT_EQ(run({"roots", write("f.json", kCubeRoots)}), 0);
  const auto j = out_json();
  EXPECT_EQ(j["schema"], "v1");
  EXPECT_EQ(j["roots"].size(), 3u);
}

TEST_F(CliTest, RootsDegreeZeroIsInputError) {
  EXPECT_EQ(run({"roots", write("f.json", R"({"degree": 0, "coeffs": [[2,0]]})")}), 1);
  EXPECT_EQ(out_json()["error"], "InvalidInput");
}

TEST_F(CliTest, RootsDoubleRoot) {
  EXPECT_EQ(run({"roots", write("f.json", R"({"degree": 2, "coeffs": [[1,0],[-2,0],[1,0]]})")}), 0);
  const auto j = out_json();
  ASSERT_EQ(j["roots"].size(), 1u);
  EXPECT_EQ(j["roots"][0]["multiplicity"], 2);
}

TEST_F(CliTest, MalformedInput) {
  EXPECT_EQ(run({"roots", write("f.json", "{not json")}), 1);
  EXPECT_EQ(out_json()["schema"], "v1");
  EXPECT_EQ(run({"roots", write("g.json", R"({"degree": 2, "coeffs": [[1,0]]})")}), 1);
  EXPECT_EQ(run({"roots", (dir_ / "missing.json").string()}), 1);
  EXPECT_EQ(run({"roots", write("h.json", R"({"schema": "v2", "degree": 1, "coeffs": [[1,0],[1,0]]})")}), 1);
  EXPECT_EQ(run({"no-such-command"}), 1);
  EXPECT_EQ(run({"roots", write("i.json", kCubeRoots), "--tol", "-1"}), 1);
}

TEST_F(CliTest, VerifySectionPureCubic) {
  const auto path = write("c.json", std::string(R"({"kind": "pure_d", "form": )") + kCubeRoots + "}");
  EXPECT_EQ(run({"verify-section", path, "--seed", "3"}), 0);
  const auto j = out_json();
  EXPECT_EQ(j["genus"], 1);
  EXPECT_EQ(j["d"], 3);
  EXPECT_EQ(j["positive_count"], 3);
}

TEST_F(CliTest, VerifySectionDoubleRoot) {
  const auto path = write("c.json", R"({"kind": "pure_d", "form": {"degree": 2, "coeffs": [[1,0],[-2,0],[1,0]]}})");
  EXPECT_EQ(run({"verify-section", path}), 3);
  EXPECT_EQ(out_json()["error"], "NotASection");
}

TEST_F(CliTest, VerifySectionTwoLayerQuartic) {
  const auto path = write("c.json", R"({"kind": "two_layer",
    "top": {"degree": 4, "coeffs": [[1,0],[0,0],[0,0],[0,0],[-1,0]]},
    "bottom": {"degree": 3, "coeffs": [[1,0],[0,0],[0,0],[2,0]]}})");
  EXPECT_EQ(run({"verify-section", path, "--samples", "200"}), 0);
  const auto j = out_json();
  EXPECT_EQ(j["positive_count"], 4);
  EXPECT_EQ(j["negative_count"], 3);
  EXPECT_EQ(j["genus"], 0);
}

TEST_F(CliTest, BuildingFermat) {
  EXPECT_EQ(run({"building", write("f.json", kFermatFamily)}), 0);
  const auto j = out_json();
  EXPECT_EQ(j["levels"].size(), 3u);
  EXPECT_EQ(j["genus_by_graph"], 1);
  EXPECT_EQ(j["genus_by_euler"], 1);
  EXPECT_EQ(j["target_genus"], 1);
}

TEST_F(CliTest, BuildingRandomDegreeSix) {
  const auto fam = write("fam.json", "");
  ASSERT_EQ(run({"random-family", "--degree", "6", "--seed", "4", "--out", fam}), 0);
  EXPECT_EQ(run({"building", fam}), 0);
  EXPECT_EQ(out_json()["genus_by_graph"], 10);
}

TEST_F(CliTest, BuildingInvalidFamily) {
  const auto path = write("f.json", R"({"degree": 2, "layers": [
    {"degree": 2, "coeffs": [[1,0],[0,0],[-1,0]]},
    {"degree": 1, "coeffs": [[1,0],[-1,0]]}]})");
  EXPECT_EQ(run({"building", path}), 4);
  const auto j = out_json();
  EXPECT_FALSE(j["valid"]);
  EXPECT_FALSE(j["violations"].empty());
}

TEST_F(CliTest, ConvergenceFermat) {
  const auto path = write("f.json", kFermatFamily);
  EXPECT_EQ(run({"convergence", path, "--lambda", "1e-1", "--lambda", "1e-2", "--lambda", "1e-3", "--lambda", "1e-4",
                 "--t-grid", "32", "--q-samples", "32"}),
            0);
  std::istringstream lines(out_.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "lambda,k,side,sup_error");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 4 * 3 * 2);
}

TEST_F(CliTest, ConvergenceSingleLambdaWarns) {
  EXPECT_EQ(run({"convergence", write("f.json", kFermatFamily), "--lambda", "0.01", "--t-grid", "8", "--q-samples",
                 "8"}),
            0);
  EXPECT_NE(err_.str().find("warning"), std::string::npos);
}

TEST_F(CliTest, ConvergenceCorruptScheduleExitsFive) {
  EXPECT_EQ(run({"convergence", write("f.json", kFermatFamily), "--corrupt-schedule", "--t-grid", "8", "--q-samples",
                 "8"}),
            5);
}

TEST_F(CliTest, ConvergenceJson) {
  EXPECT_EQ(run({"convergence", write("f.json", kFermatFamily), "--format", "json", "--t-grid", "8", "--q-samples",
                 "8"}),
            0);
  const auto j = out_json();
  EXPECT_TRUE(j["passed"]);
  EXPECT_EQ(j["checks"].size(), 6u);
}

TEST_F(CliTest, SeifertCommands) {
  EXPECT_EQ(run({"seifert", "euler", "M(0;(1,1))"}), 0);
  EXPECT_EQ(out_json()["euler_number"], "-1");
  EXPECT_EQ(run({"seifert", "equiv", "M(0;(1,1))", "M(0;(1,1),(1,1),(1,-1))"}), 0);
  EXPECT_EQ(out_json()["equivalent"], "true");
  EXPECT_EQ(run({"seifert", "normalize", "M(0;(1,1))", "--move", "add", "--move", "add", "--move", "twist:0,1,-1"}), 0);
  EXPECT_EQ(out_json()["result"], "M(0;(1,1),(1,1),(1,-1))");
  EXPECT_EQ(run({"seifert", "normalize", "M(0;(1,1),(1,2))", "--move", "twist:1,1"}), 6);
  EXPECT_EQ(out_json()["error"], "IllegalMove");
  EXPECT_EQ(run({"seifert", "euler", "M(0;(1,1)"}), 1);
  EXPECT_EQ(run({"seifert", "bogus", "M(0;(1,1))"}), 1);
}

TEST_F(CliTest, SampleSurface) {
  const auto linear = write("l.json", R"({"kind": "pure_d", "form": {"degree": 1, "coeffs": [[1,0],[0,0]]}})");
  EXPECT_EQ(run({"sample-surface", linear, "--fibre", "0,0,1,0", "--eps-count", "2", "--theta-steps", "16"}), 0);
  std::istringstream lines(out_.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "theta,log_r,arg_w,x1,y1,x2,y2");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 32);

  const auto cubic = write("c.json", std::string(R"({"kind": "pure_d", "form": )") + kCubeRoots + "}");
  EXPECT_EQ(run({"sample-surface", cubic, "--fibre", "1,0,1,0", "--eps-count", "1", "--theta-steps", "8"}), 0);
  std::istringstream cubic_lines(out_.str());
  rows = -1;
  while (std::getline(cubic_lines, line)) ++rows;
  EXPECT_EQ(rows, 24);

  EXPECT_EQ(run({"sample-surface", cubic, "--fibre", "1,0,0,0"}), 1);
}

TEST_F(CliTest, ByteIdenticalReruns) {
  const auto path = write("c.json", std::string(R"({"kind": "pure_d", "form": )") + kCubeRoots + "}");
  ASSERT_EQ(run({"verify-section", path, "--seed", "9", "--samples", "100"}), 0);
  const auto first = out_.str();
  ASSERT_EQ(run({"verify-section", path, "--seed", "9", "--samples", "100"}), 0);
  EXPECT_EQ(first, out_.str());
}

TEST_F(CliTest, OutFile) {
  const auto out = (dir_ / "roots.json").string();
  EXPECT_EQ(run({"roots", write("f.json", kCubeRoots), "--out", out}), 0);
  EXPECT_TRUE(out_.str().empty());
  std::ifstream in(out);
  EXPECT_EQ(json::parse(in)["roots"].size(), 3u);
}
