// SPDX-License-Identifier: Apache-2.0
#include "gentrig/report_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace gentrig {
namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s) {
  if (s == "nan" || s == "-nan") return std::numeric_limits<double>::quiet_NaN();
  return std::strtod(s.c_str(), nullptr);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string to_csv(const ScanReport& report) {
  std::string out = "property,kind,p,y,margin,err_bound,verdict\n";
  const std::size_t ny = report.y_grid.size();
  for (std::size_t ip = 0; ip < report.p_grid.size(); ++ip) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const Margin& m = report.margins[ip * ny + iy];
      out += std::string(to_string(report.property));
      out += ',';
      out += std::string(to_string(report.kind));
      out += ',';
      out += format_double(report.p_grid[ip]);
      out += ',';
      out += format_double(report.y_grid[iy]);
      out += ',';
      out += format_double(m.value);
      out += ',';
      out += format_double(m.err_bound);
      out += ',';
      out += std::string(to_string(m.verdict));
      out += '\n';
    }
  }
  return out;
}

ScanReport parse_scan_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "property,kind,p,y,margin,err_bound,verdict") {
    throw std::runtime_error("parse_scan_csv: bad header");
  }
  ScanReport report;
  report.config = ScanConfig{};
  bool first = true;
  std::vector<std::pair<std::pair<double, double>, Margin>> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 7) throw std::runtime_error("parse_scan_csv: bad row");
    const auto prop = property_from_string(f[0]);
    const auto kind = kind_from_string(f[1]);
    const auto verdict = verdict_from_string(f[6]);
    if (!prop || !kind || !verdict) throw std::runtime_error("parse_scan_csv: bad enum");
    if (first) {
      report.property = *prop;
      report.kind = *kind;
      first = false;
    } else if (*prop != report.property || *kind != report.kind) {
      throw std::runtime_error("parse_scan_csv: mixed properties in one report");
    }
    const double p = parse_double(f[2]);
    const double y = parse_double(f[3]);
    Margin m{parse_double(f[4]), parse_double(f[5]), *verdict};
    if (report.p_grid.empty() || report.p_grid.back() < p) {
      if (report.p_grid.empty() || report.p_grid.back() != p) report.p_grid.push_back(p);
    }
    if (report.p_grid.size() == 1) report.y_grid.push_back(y);
    cells.push_back({{p, y}, m});
  }
  if (first) throw std::runtime_error("parse_scan_csv: no rows");
  const std::size_t ny = report.y_grid.size();
  if (cells.size() != report.p_grid.size() * ny) {
    throw std::runtime_error("parse_scan_csv: ragged grid");
  }
  report.margins.resize(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) report.margins[i] = cells[i].second;
  return report;
}

std::string to_json(const ScanReport& report) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["property"] = std::string(to_string(report.property));
  j["kind"] = std::string(to_string(report.kind));
  j["p_grid"] = report.p_grid;
  j["y_grid"] = report.y_grid;
  j["config"] = {
      {"mode", std::string(to_string(report.config.mode))},
      {"rel_tol", report.config.eval.quad.rel_tol},
      {"abs_tol", report.config.eval.quad.abs_tol},
      {"max_levels", report.config.eval.quad.max_levels},
      {"residual_rel", report.config.eval.residual_rel},
      {"bracket_tol", report.config.eval.bracket_tol},
      {"fd_step", report.config.fd_step},
      {"threads", report.config.threads},
  };
  nlohmann::json cells = nlohmann::json::array();
  const std::size_t ny = report.y_grid.size();
  for (std::size_t ip = 0; ip < report.p_grid.size(); ++ip) {
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const Margin& m = report.margins[ip * ny + iy];
      cells.push_back({{"p", report.p_grid[ip]},
                       {"y", report.y_grid[iy]},
                       {"margin", m.value},
                       {"err_bound", m.err_bound},
                       {"verdict", std::string(to_string(m.verdict))}});
    }
  }
  j["cells"] = std::move(cells);
  return j.dump(2) + "\n";
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_atomic: cannot open " + tmp);
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write_atomic: write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::runtime_error("write_atomic: rename failed for " + path);
  }
}

}  // namespace gentrig
