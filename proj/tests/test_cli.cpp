// SPDX-License-Identifier: Apache-2.0
#include "gentrig/cli.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "gentrig/report_io.hpp"

namespace {

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
  std::ostringstream out, err;
  const int status = gentrig::run(args, out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return status;
}

TEST(Cli, EvalPrintsClassicalSine) {
  std::string out;
  const int status = run_cli({"eval", "--kind", "sin", "--p", "2", "--y", "1"}, &out);
  EXPECT_EQ(status, 0);
  EXPECT_NE(out.find("0.8414709848078"), std::string::npos) << out;
  EXPECT_NE(out.find("err_bound"), std::string::npos);
}

TEST(Cli, EvalJson) {
  std::string out;
  const int status = run_cli(
      {"eval", "--kind", "tanh", "--p", "2.5", "--y", "1.3", "--format", "json"},
      &out);
  EXPECT_EQ(status, 0);
  EXPECT_NE(out.find("0.8959239458193"), std::string::npos) << out;
}

TEST(Cli, DerivsReportsAllFields) {
  std::string out;
  const int status =
      run_cli({"derivs", "--kind", "sin", "--p", "2", "--y", "0.7"}, &out);
  EXPECT_EQ(status, 0);
  EXPECT_NE(out.find("d2logg_dp2"), std::string::npos);
  EXPECT_NE(out.find("0.0618431978"), std::string::npos) << out;
}

TEST(Cli, ScanCertifiedRegionExitsZeroAndParses) {
  std::string out;
  const int status = run_cli(
      {"scan", "--property", "log-concave", "--kind", "sin", "--p-min", "0.5",
       "--p-max", "4", "--p-steps", "3", "--y-min", "0.1", "--y-max", "0.8",
       "--y-steps", "3"},
      &out);
  EXPECT_EQ(status, 0);
  const gentrig::ScanReport r = gentrig::parse_scan_csv(out);
  EXPECT_EQ(r.p_grid.size(), 3u);
  EXPECT_EQ(r.y_grid.size(), 3u);
  EXPECT_EQ(r.fails(), 0u);
}

TEST(Cli, ScanNegativeControlExitsOne) {
  std::string out;
  const int status = run_cli(
      {"scan", "--property", "log-convex", "--kind", "tan", "--p-min", "0.1",
       "--p-max", "0.3", "--p-steps", "3", "--y-min", "0.5", "--y-max", "0.65",
       "--y-steps", "3"},
      &out);
  EXPECT_EQ(status, 1);
}

TEST(Cli, ScanLooseToleranceExitsThree) {
  std::string out;
  const int status = run_cli(
      {"scan", "--property", "log-concave", "--kind", "sin", "--p-min", "1.5",
       "--p-max", "3", "--p-steps", "2", "--y-min", "0.2", "--y-max", "0.5",
       "--y-steps", "2", "--tol", "0.5"},
      &out);
  EXPECT_EQ(status, 3);
}

TEST(Cli, ScanWritesFileAtomically) {
  const std::string path = ::testing::TempDir() + "gentrig_cli_scan.csv";
  std::remove(path.c_str());
  std::string out;
  const int status = run_cli(
      {"scan", "--property", "concave", "--kind", "tanh", "--p-min", "1",
       "--p-max", "4", "--p-steps", "2", "--y-min", "0.3", "--y-max", "1.5",
       "--y-steps", "2", "--output", path},
      &out);
  EXPECT_EQ(status, 0);
  EXPECT_TRUE(out.empty());
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  EXPECT_EQ(gentrig::parse_scan_csv(content).fails(), 0u);
  std::remove(path.c_str());
}

TEST(Cli, TuranSingleMargin) {
  std::string out;
  const int status =
      run_cli({"turan", "--kind", "tan", "--p", "3", "--y", "0.5"}, &out);
  EXPECT_EQ(status, 0);
  EXPECT_NE(out.find("turan-tan"), std::string::npos);
  EXPECT_NE(out.find("holds"), std::string::npos);
}

TEST(Cli, Lemma3Subcommand) {
  std::string out;
  const int status = run_cli({"lemma3", "--p", "2", "--s", "0.5"}, &out);
  EXPECT_EQ(status, 0);
  EXPECT_NE(out.find("true"), std::string::npos);
}

TEST(Cli, FindP0Smoke) {
  std::string out;
  const int status = run_cli({"find-p0", "--y-min", "0.4", "--y-max", "0.6",
                              "--y-steps", "2", "--p-min", "0.15", "--p-max",
                              "0.8", "--p0-tol", "5e-3"},
                             &out);
  EXPECT_EQ(status, 0);
  EXPECT_NE(out.find("p0_estimate"), std::string::npos);
  EXPECT_NE(out.find("threshold"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  std::string err;
  EXPECT_EQ(run_cli({"scan", "--property", "nonsense"}, nullptr, &err), 2);
  EXPECT_EQ(run_cli({"scan", "--property", "log-concave", "--kind", "sin",
                     "--p-min", "4", "--p-max", "2"},
                    nullptr, &err),
            2);  // disordered grid bounds
  EXPECT_EQ(run_cli({"eval", "--kind", "sin"}, nullptr, &err), 2);  // missing flags
  EXPECT_EQ(run_cli({"frobnicate"}, nullptr, &err), 2);
  EXPECT_EQ(run_cli({}, nullptr, &err), 2);
  EXPECT_EQ(run_cli({"eval", "--kind", "sec", "--p", "2", "--y", "1"}, nullptr, &err),
            2);
  EXPECT_EQ(run_cli({"eval", "--kind", "sin", "--p", "-2", "--y", "1"}, nullptr, &err),
            2);
}

TEST(Cli, HelpExitsZero) {
  std::string out;
  EXPECT_EQ(run_cli({"--help"}, &out), 0);
  EXPECT_NE(out.find("scan"), std::string::npos);
}

TEST(Cli, ThreadEnvironmentCapRespected) {
  // GENTRIG_THREADS caps parallelism; results are identical either way
  const std::vector<std::string> args = {
      "scan", "--property", "log-concave", "--kind",  "sin",   "--p-min",
      "1.5",  "--p-max",    "4",           "--p-steps", "3",   "--y-min",
      "0.2",  "--y-max",    "0.6",         "--y-steps", "3",   "--threads", "4"};
  std::string capped, free_run;
  ASSERT_EQ(setenv("GENTRIG_THREADS", "1", 1), 0);
  EXPECT_EQ(run_cli(args, &capped), 0);
  unsetenv("GENTRIG_THREADS");
  EXPECT_EQ(run_cli(args, &free_run), 0);
  EXPECT_EQ(capped, free_run);
}

}  // namespace
