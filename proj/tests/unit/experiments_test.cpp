#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "hardcore/experiments.hpp"
#include "json.hpp"

namespace hardcore {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class ExperimentsTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("hardcore-exp-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  ExperimentConfig config(const std::string& sub) const {
    ExperimentConfig c;
    c.out_dir = (dir_ / sub).string();
    return c;
  }
  fs::path dir_;
};

TEST_F(ExperimentsTest, ChaosExactRowsAreValidAndParallelismInvariant) {
  ExperimentConfig c = config("a");
  c.n = {10};
  c.s = {0.0, 0.5, 1.0};
  c.trials = 4;
  c.exact = true;
  std::ostringstream log;
  EXPECT_EQ(cmd_chaos(c, log), ExitCode::kPass);
  std::string first = slurp(fs::path(c.out_dir) / "chaos.csv");
  EXPECT_EQ(first.substr(0, first.find('\n')), chaos_csv_header(true));

  ExperimentConfig d = config("b");
  d.n = c.n;
  d.s = c.s;
  d.trials = c.trials;
  d.exact = true;
  d.parallelism = 3;
  EXPECT_EQ(cmd_chaos(d, log), ExitCode::kPass);
  EXPECT_EQ(slurp(fs::path(d.out_dir) / "chaos.csv"), first);

  for (const auto& row : chaos_cell(c, 10, 0.5)) {
    ASSERT_TRUE(row.w2sq_exact.has_value());
    EXPECT_LE(row.cert.w2sq_lower, *row.w2sq_exact + 1e-9);
  }
  for (const auto& row : chaos_cell(c, 10, 0.0)) EXPECT_NEAR(row.cert.w2sq_lower, 0.0, 1e-12);

  auto meta = nlohmann::json::parse(slurp(fs::path(c.out_dir) / "chaos.json"));
  EXPECT_EQ(meta["version"], kVersion);
  EXPECT_TRUE(meta["config"].contains("master_seed"));
  EXPECT_EQ(meta["cells"][0]["graph_hashes"].size(), 4u);
}

TEST_F(ExperimentsTest, ManifestResumesCells) {
  ExperimentConfig c = config("zk");
  c.n = {40};
  c.graph_seeds = 3;
  c.k = 3;
  std::ostringstream log;
  EXPECT_EQ(cmd_zk(c, log), ExitCode::kPass);
  std::string first = slurp(fs::path(c.out_dir) / "zk.csv");
  // A second run reuses the recorded cell instead of recomputing it.
  fs::path cell = fs::path(c.out_dir) / "cells" / "zk_n40.csv";
  ASSERT_TRUE(fs::exists(cell));
  std::ofstream(cell) << "40,0,marker\n";
  EXPECT_EQ(cmd_zk(c, log), ExitCode::kPass);
  EXPECT_NE(slurp(fs::path(c.out_dir) / "zk.csv").find("marker"), std::string::npos);
  // A changed configuration is a different cell.
  c.graph_seeds = 4;
  EXPECT_EQ(cmd_zk(c, log), ExitCode::kPass);
  EXPECT_EQ(slurp(fs::path(c.out_dir) / "zk.csv").find("marker"), std::string::npos);
  Manifest m(fs::path(c.out_dir) / "manifest.json");
  EXPECT_EQ(m.done("nonexistent"), false);
}

TEST_F(ExperimentsTest, ZkRows) {
  ExperimentConfig c = config("zk");
  c.graph_seeds = 5;
  ZkCell cell = zk_cell(c, 30, 3);
  ASSERT_EQ(cell.rows.size(), 4u);
  EXPECT_EQ(cell.rows[0].mean, 1.0);
  EXPECT_EQ(cell.rows[0].variance, 0.0);
  EXPECT_EQ(cell.rows[1].mean, 30.0);
  EXPECT_EQ(cell.counts.size(), 5u);
}

TEST_F(ExperimentsTest, GlauberSampleFlagsUnreachableSize) {
  ExperimentConfig c = config("gs");
  c.n = {8};
  c.k = 8;
  c.trials = 5;
  c.horizon_factor = 1;
  c.extend = false;
  std::ostringstream log;
  EXPECT_EQ(cmd_glauber_sample(c, log), ExitCode::kPropertyFailure);
  EXPECT_NE(slurp(fs::path(c.out_dir) / "glauber_sample.csv").find("ALL_FAIL"), std::string::npos);
}

TEST_F(ExperimentsTest, GlauberSampleExactColumns) {
  ExperimentConfig c = config("gs");
  c.n = {10};
  c.k = 2;
  c.k_minus = 1;
  c.trials = 50;
  c.exact = true;
  SamplingCell cell = sampling_cell(c, 10, 0);
  ASSERT_TRUE(cell.row.w2_stopped.has_value());
  ASSERT_TRUE(cell.row.w2_extended.has_value());
  EXPECT_GT(*cell.row.w2_stopped, *cell.row.w2_extended);
  EXPECT_EQ(cell.glauber.records.size(), 50u);
  EXPECT_EQ(cell.extended.records.size(), 50u);
}

TEST_F(ExperimentsTest, UniformityOnEmptyGraphIsExact) {
  ExperimentConfig c = config("gu");
  c.p = 1e-12;  // numerically edgeless
  c.trials = 10;
  UniformityRow row = uniformity_cell(c, 30, 0, 4);
  EXPECT_EQ(row.sets, 10u);
  EXPECT_DOUBLE_EQ(row.ratio, 1.0);
}

TEST_F(ExperimentsTest, ExitCodes) {
  std::ostringstream log;
  ExperimentConfig c = config("x");
  c.k = 10;
  EXPECT_EQ(cmd_greedy_uniformity(c, log), ExitCode::kUsage);
  EXPECT_EQ(run_command("frobnicate", c, log), ExitCode::kUsage);
  ExperimentConfig b = config("y");
  b.n = {20};
  b.k = 2;
  b.exact = true;
  b.trials = 2;
  b.budget = 5;
  EXPECT_EQ(run_command("glauber-sample", b, log), ExitCode::kBudgetExceeded);
}

TEST(Seeds, PureFunctionsOfTags) {
  EXPECT_EQ(graph_seed(1, 100, 2), graph_seed(1, 100, 2));
  EXPECT_NE(graph_seed(1, 100, 2), graph_seed(1, 100, 3));
  EXPECT_NE(cell_seed(1, "chaos", 100, 0), cell_seed(1, "zk", 100, 0));
}

TEST(Helpers, SizesAndHorizon) {
  ExperimentConfig c;
  EXPECT_EQ(horizon_for(c, 4096, 6), 76800u);
  EXPECT_EQ(chaos_k_minus(c, 2000), 6u);
  c.k = 5;
  EXPECT_EQ(target_size(c, 4096), 5u);
}

}  // namespace
}  // namespace hardcore
