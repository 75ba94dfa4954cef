// SPDX-License-Identifier: Apache-2.0
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "duplex/dof_closed_form.hpp"
#include "duplex/dof_search.hpp"
#include "duplex_cli/cli.hpp"

namespace fs = std::filesystem;
using namespace duplex;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Result r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

using Row = std::vector<std::string>;

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

// Header plus data rows of one table from CSV text (stdout or a single file).
std::vector<Row> table(const std::string& text, const std::string& name = "main") {
  std::istringstream in(text);
  std::string line;
  bool inside = text.find("# table=") == std::string::npos;
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.rfind("# table=", 0) == 0) {
      if (inside && !rows.empty()) break;
      inside = line == "# table=" + name;
      continue;
    }
    if (!inside || line.empty() || line[0] == '#') continue;
    rows.push_back(split(line));
  }
  return rows;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliFiles : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("duplex_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

}  // namespace

TEST(Cli, HelpAndVersion) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  const auto v = run_cli({"--version"});
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("0.1.0"), std::string::npos);
}

TEST(Cli, ConfigErrors) {
  EXPECT_EQ(run_cli({}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"dof", "three-hop", "--na", "2"}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"dof", "two-way", "--na", "0", "--nb", "2"}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"dof", "two-way", "--na", "2", "--nb", "2", "--modes", "ac"}).code, cli::kConfigError);
  EXPECT_EQ(run_cli({"dof", "two-way", "--na", "2", "--nb", "2", "--lambda", "1.5", "--modes", "ac"}).code,
            cli::kConfigError);
  EXPECT_EQ(run_cli({"dof", "two-hop", "--na", "2", "--nb", "2", "--modes", "hd", "--format", "xml"}).code,
            cli::kConfigError);
  EXPECT_EQ(run_cli({"rate", "two-way", "--na", "2", "--nb", "2", "--modes", "hd", "--snr-min", "40", "--snr-max",
                     "50", "--snr-step", "5"})
                .code,
            cli::kConfigError);
}

TEST(Cli, MissingOutputDirectoryIsIoError) {
  const auto r = run_cli({"dof", "two-hop", "--na", "4", "--nr", "2", "--nb", "4", "--modes", "hd", "--out",
                          "/nonexistent_dir_for_duplex/x.csv"});
  EXPECT_EQ(r.code, cli::kIoError);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, TwoHopHdRow) {
  const auto r = run_cli({"dof", "two-hop", "--na", "4", "--nr", "2", "--nb", "4", "--modes", "hd"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = table(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (Row{"mode", "tau_opt", "gamma_opt", "r_opt", "dof"}));
  EXPECT_EQ(rows[1][0], "hd");
  EXPECT_DOUBLE_EQ(std::stod(rows[1][1]), 0.5);
  EXPECT_DOUBLE_EQ(std::stod(rows[1][4]), 1.0);
}

TEST(Cli, TwoHopFdRow) {
  const auto r = run_cli({"dof", "two-hop", "--na", "4", "--nr", "8", "--nb", "4", "--lambda", "0.5", "--modes",
                          "hd,ac"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = table(r.out);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[2][0], "ac");
  EXPECT_NEAR(std::stod(rows[2][2]), 2.0 / 3.0, 1e-9);
  EXPECT_EQ(rows[2][3], "4");
  EXPECT_NEAR(std::stod(rows[2][4]), 8.0 / 3.0, 1e-9);
  for (const auto& row : table(r.out, "oracle")) {
    if (row[0] == "mode") continue;
    EXPECT_LT(std::stod(row[4]), 1e-3);
  }
}

TEST_F(CliFiles, TwoWayRegionsPerMode) {
  const auto stem = (dir_ / "regions.csv").string();
  const auto r = run_cli({"dof", "two-way", "--na", "4", "--nb", "6", "--lambda", "0.9", "--modes", "hd,ac,rc",
                          "--out", stem});
  ASSERT_EQ(r.code, 0) << r.err;
  for (const char* mode : {"hd", "ac", "rc"}) {
    const auto file = dir_ / (std::string("regions.") + mode + ".csv");
    ASSERT_TRUE(fs::exists(file)) << file;
    const auto text = slurp(file);
    EXPECT_NE(text.find("# version="), std::string::npos);
    EXPECT_NE(text.find("# config="), std::string::npos);
    const auto rows = table(text);
    ASSERT_GE(rows.size(), 3u);
    EXPECT_EQ(rows[0], (Row{"mode", "vertex_index", "d_ab", "d_ba"}));
  }
  double hd_sum = 0.0;
  for (const auto& row : table(slurp(dir_ / "regions.hd.csv"))) {
    if (row[0] != "hd") continue;
    hd_sum = std::max(hd_sum, std::stod(row[2]) + std::stod(row[3]));
  }
  EXPECT_DOUBLE_EQ(hd_sum, 4.0);
}

TEST(Cli, JsonRoundTrip) {
  const auto r = run_cli({"dof", "two-way", "--na", "4", "--nb", "6", "--lambda", "0.9", "--modes", "hd,ac,rc",
                          "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc.at("config").at("n_a"), 4);
  const auto regions = cli::regions_from_json(doc);
  ASSERT_EQ(regions.size(), 3u);
  EXPECT_EQ(regions.at("hd").vertices(), twoway_hd_region(4, 6).vertices());
  const auto ac = twoway_fd_region(4, 6, DuplexMode::AntennaConservedFD, SiParams(0.9));
  EXPECT_LT(support_distance(regions.at("ac"), ac), 1e-9);
}

TEST(Cli, AdviseSymmetricRelay) {
  const auto r = run_cli({"advise", "two-hop", "--na", "4", "--nr", "8", "--nb", "4", "--lambda", "0.5", "--modes",
                          "hd,ac"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = table(r.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][1], "ac");
  EXPECT_NEAR(std::stod(rows[1][2]), 2.0 / 3.0, 1e-9);
}

TEST(Cli, AdviseSingleAntennaSource) {
  const auto r = run_cli({"advise", "two-hop", "--na", "1", "--nr", "2", "--nb", "4", "--lambda", "0.4", "--modes",
                          "hd,ac"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rows = table(r.out);
  EXPECT_EQ(rows[1][1], "hd");
  EXPECT_EQ(rows[1][3], "lambda > 1/N_R");
}

TEST(Cli, AdviseTwoWayRelayDefaultsLambda) {
  const auto r = run_cli({"advise", "twr", "--na", "4", "--nr", "6", "--nb", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("# assumption=lambda not specified; assumed 0.9"), std::string::npos);
  EXPECT_GE(table(r.out).size(), 2u);
}

TEST(Cli, RateOutputIsReproducible) {
  const std::vector<std::string> args{"rate", "two-way", "--na", "2", "--nb", "3", "--modes", "hd,ac", "--lambda",
                                      "0.8", "--samples", "2000", "--seed", "7"};
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  auto other = args;
  other.back() = "8";
  EXPECT_NE(run_cli(other).out, a.out);
}

TEST(Cli, RateSlopeMatchesPointToPoint) {
  const auto r = run_cli({"rate", "p2p", "--na", "2", "--nb", "2", "--samples", "4000"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto slopes = table(r.out, "slopes");
  ASSERT_EQ(slopes.size(), 2u);
  EXPECT_NEAR(std::stod(slopes[1][2]), 2.0, 0.1);
  EXPECT_EQ(slopes[1][8], "2");
}

TEST(Cli, BetterSiDominates) {
  auto rows_for = [](const char* lambda) {
    const auto r = run_cli({"rate", "two-way", "--na", "4", "--nb", "4", "--modes", "ac", "--lambda", lambda,
                            "--samples", "2000"});
    EXPECT_EQ(r.code, 0) << r.err;
    return table(r.out);
  };
  const auto good = rows_for("1");
  const auto bad = rows_for("0.5");
  ASSERT_EQ(good.size(), bad.size());
  for (std::size_t i = 1; i < good.size(); ++i) {
    EXPECT_GT(std::stod(good[i][2]) + std::stod(good[i][4]), std::stod(bad[i][2]) + std::stod(bad[i][4]));
  }
}

TEST(Cli, UnstableFitExitCode) {
  const auto r = run_cli({"rate", "two-hop", "--na", "1", "--nr", "2", "--nb", "1", "--modes", "hd,ac", "--lambda",
                          "0.5", "--samples", "8", "--snr-min", "0", "--snr-max", "30", "--snr-step", "10"});
  EXPECT_EQ(r.code, cli::kFitUnstable);
  EXPECT_NE(r.err.find("unstable"), std::string::npos);
  EXPECT_EQ(table(r.out, "slopes").size(), 3u);
}
