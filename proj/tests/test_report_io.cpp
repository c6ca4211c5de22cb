// SPDX-License-Identifier: Apache-2.0
#include "gentrig/report_io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace {

using namespace gentrig;

ScanReport sample_report() {
  return scan(ScanProperty::LogConcave, FunctionKind::Sin,
              geometric_grid(1.5, 4.0, 3), uniform_grid(0.2, 0.7, 3), ScanConfig{});
}

bool same_double(double a, double b) {
  if (std::isnan(a) && std::isnan(b)) return true;
  return a == b;
}

TEST(FormatDouble, LosslessRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -0.0, 2.2214414690791831,
                   std::numeric_limits<double>::min()}) {
    const double back = std::strtod(format_double(v).c_str(), nullptr);
    EXPECT_EQ(back, v) << format_double(v);
  }
  EXPECT_TRUE(std::isnan(std::strtod(format_double(std::nan("")).c_str(), nullptr)));
}

TEST(Csv, RoundTripIdentity) {
  const ScanReport r = sample_report();
  const std::string csv = to_csv(r);
  const ScanReport back = parse_scan_csv(csv);
  EXPECT_EQ(back.property, r.property);
  EXPECT_EQ(back.kind, r.kind);
  ASSERT_EQ(back.p_grid.size(), r.p_grid.size());
  ASSERT_EQ(back.y_grid.size(), r.y_grid.size());
  for (std::size_t i = 0; i < r.p_grid.size(); ++i) {
    EXPECT_EQ(back.p_grid[i], r.p_grid[i]);
  }
  for (std::size_t i = 0; i < r.y_grid.size(); ++i) {
    EXPECT_EQ(back.y_grid[i], r.y_grid[i]);
  }
  ASSERT_EQ(back.margins.size(), r.margins.size());
  for (std::size_t i = 0; i < r.margins.size(); ++i) {
    EXPECT_TRUE(same_double(back.margins[i].value, r.margins[i].value));
    EXPECT_TRUE(same_double(back.margins[i].err_bound, r.margins[i].err_bound));
    EXPECT_EQ(back.margins[i].verdict, r.margins[i].verdict);
  }
  // second serialization is byte-identical
  EXPECT_EQ(to_csv(back), csv);
}

TEST(Csv, RoundTripsInconclusiveNanCells) {
  ScanReport r = sample_report();
  r.margins[1] = Margin{std::nan(""), std::numeric_limits<double>::infinity(),
                        Verdict::Inconclusive};
  const ScanReport back = parse_scan_csv(to_csv(r));
  EXPECT_TRUE(std::isnan(back.margins[1].value));
  EXPECT_TRUE(std::isinf(back.margins[1].err_bound));
  EXPECT_EQ(back.margins[1].verdict, Verdict::Inconclusive);
}

TEST(Csv, SchemaIsPinned) {
  const std::string csv = to_csv(sample_report());
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "property,kind,p,y,margin,err_bound,verdict");
  EXPECT_EQ(csv.find('\r'), std::string::npos);  // LF endings only
}

TEST(Csv, ParserRejectsGarbage) {
  EXPECT_THROW(parse_scan_csv("not,a,report\n"), std::runtime_error);
  EXPECT_THROW(parse_scan_csv("property,kind,p,y,margin,err_bound,verdict\n"),
               std::runtime_error);
  EXPECT_THROW(
      parse_scan_csv("property,kind,p,y,margin,err_bound,verdict\nbad row\n"),
      std::runtime_error);
}

TEST(Json, SchemaVersionAndMirror) {
  const ScanReport r = sample_report();
  const nlohmann::json j = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(j.at("schema_version").get<int>(), 1);
  EXPECT_EQ(j.at("property").get<std::string>(), "log-concave");
  EXPECT_EQ(j.at("kind").get<std::string>(), "sin");
  EXPECT_EQ(j.at("p_grid").size(), r.p_grid.size());
  EXPECT_EQ(j.at("cells").size(), r.margins.size());
  EXPECT_TRUE(j.at("config").contains("rel_tol"));
  EXPECT_EQ(j.at("cells")[0].at("verdict").get<std::string>(), "holds");
}

TEST(WriteAtomic, WritesAndCleansUp) {
  const std::string path = ::testing::TempDir() + "gentrig_report_test.csv";
  std::remove(path.c_str());
  write_atomic(path, "hello\n");
  std::ifstream in(path);
  std::string content((std::istreambuf_iterator<char>(in)),
                      std::istreambuf_iterator<char>());
  EXPECT_EQ(content, "hello\n");
  std::ifstream tmp(path + ".tmp");
  EXPECT_FALSE(tmp.good());
  std::remove(path.c_str());
}

}  // namespace
