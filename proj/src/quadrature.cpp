// SPDX-License-Identifier: Apache-2.0
#include "gentrig/quadrature.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace gentrig {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();

// Smallest complement (distance from an endpoint in units of the half-width)
// kept in the node tables.  Nodes beyond it contribute below 1e-18 of the
// interval mass for bounded transformed integrands.
constexpr double kComplementFloor = 1e-18;
constexpr int kMaxTableLevels = 15;

// One tanh-sinh node on the positive side of the reference interval (-1,1):
// complement c = 1 - tanh((pi/2) sinh(u)) and weight w = dx/du, both exact in
// complement form so endpoint distances never suffer cancellation.
struct Node {
  double c;
  double w;
};

// Abscissas u = k*h for level 0 (h = 1), odd multiples of h = 2^-L for
// deeper levels; each level stores only the nodes new at that level.
const std::vector<std::vector<Node>>& node_tables() {
  static const std::vector<std::vector<Node>> tables = [] {
    std::vector<std::vector<Node>> t(kMaxTableLevels);
    for (int level = 0; level < kMaxTableLevels; ++level) {
      const double h = std::ldexp(1.0, -level);
      const int stride = (level == 0) ? 1 : 2;
      for (int k = (level == 0) ? 0 : 1;; k += stride) {
        const double u = k * h;
        const double snh = (kPi / 2.0) * std::sinh(u);
        const double c = 2.0 / (1.0 + std::exp(2.0 * snh));
        if (c < kComplementFloor) break;
        const double ch = std::cosh(snh);
        const double w = (kPi / 2.0) * std::cosh(u) / (ch * ch);
        t[level].push_back({c, w});
      }
    }
    return t;
  }();
  return tables;
}

double sanitized(double v) { return std::isfinite(v) ? v : 0.0; }

}  // namespace

QuadResult integrate(const std::function<double(double)>& kernel, double lower,
                     double upper, const QuadratureConfig& cfg) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    throw InvalidInterval("integrate: requires finite lower < upper");
  }
  if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0) || cfg.max_levels < 1) {
    throw std::invalid_argument("integrate: bad QuadratureConfig");
  }

  const double halfw = 0.5 * (upper - lower);
  const double center = lower + halfw;
  const auto& tables = node_tables();
  const int max_levels = std::min(cfg.max_levels, kMaxTableLevels);

  // Sum of w*f over the new nodes of one level; nodes whose position would
  // collide with an endpoint are skipped.
  const auto level_sums = [&](int level, double& sum, double& abs_sum) {
    sum = 0.0;
    abs_sum = 0.0;
    const bool with_center = (level == 0);
    for (std::size_t i = 0; i < tables[level].size(); ++i) {
      const Node& n = tables[level][i];
      if (with_center && i == 0) {
        const double fc = sanitized(kernel(center));
        sum += n.w * fc;
        abs_sum += std::abs(n.w * fc);
        continue;
      }
      const double off = halfw * n.c;
      const double xr = upper - off;
      const double xl = lower + off;
      if (xr < upper) {
        const double f = sanitized(kernel(xr));
        sum += n.w * f;
        abs_sum += std::abs(n.w * f);
      }
      if (xl > lower) {
        const double f = sanitized(kernel(xl));
        sum += n.w * f;
        abs_sum += std::abs(n.w * f);
      }
    }
  };

  QuadResult res;
  double value = 0.0;
  double l1 = 0.0;
  for (int level = 0; level < max_levels; ++level) {
    const double h = std::ldexp(1.0, -level);
    double sum = 0.0, abs_sum = 0.0;
    level_sums(level, sum, abs_sum);
    const double prev = value;
    if (level == 0) {
      value = halfw * h * sum;
      l1 = halfw * h * abs_sum;
    } else {
      value = 0.5 * prev + halfw * h * sum;
      l1 = 0.5 * l1 + halfw * h * abs_sum;
    }
    res.levels_used = level + 1;
    if (level > 0) {
      const double diff = std::abs(value - prev);
      res.err_estimate = diff;
      const double target = std::max(cfg.rel_tol * std::abs(value), cfg.abs_tol);
      const double noise_floor = 16.0 * kEps * l1;
      if (diff <= target || diff <= noise_floor) {
        res.converged = true;
        break;
      }
    } else {
      res.err_estimate = std::abs(value);
    }
  }
  res.value = value;
  return res;
}

QuadResult integrate_singular_upper(const std::function<double(double)>& kernel,
                                    double lower, double upper,
                                    double singularity_exponent,
                                    const QuadratureConfig& cfg) {
  if (!std::isfinite(lower) || !std::isfinite(upper) || !(lower < upper)) {
    throw InvalidInterval("integrate_singular_upper: requires finite lower < upper");
  }
  if (std::isnan(singularity_exponent) || singularity_exponent >= 1.0) {
    throw NonIntegrable("integrate_singular_upper: exponent >= 1 does not converge");
  }
  if (!(singularity_exponent > 0.0)) {
    throw std::invalid_argument(
        "integrate_singular_upper: exponent must lie in (0,1); use integrate() "
        "for regular kernels");
  }

  const double sigma = singularity_exponent;
  const double m = 1.0 / (1.0 - sigma);
  const double span = upper - lower;
  const double s_upper = std::pow(span, 1.0 - sigma);

  // Inside d < D the argument upper - d is quantized too coarsely for direct
  // kernel evaluation (the substitution stretches the last ulps of t across
  // a wide band in s when the exponent is large); a local quadratic model of
  // the regular factor kernel(upper-d) * d^sigma takes over there.  The
  // calibration distances are snapped to exactly representable ones so the
  // fit itself is quantization-free.
  const double band = std::min(1e-5 * std::max(1.0, std::abs(upper)), span / 16.0);
  double dd[3], aa[3];
  bool model_ok = true;
  for (int i = 0; i < 3; ++i) {
    const double t = upper - band * static_cast<double>(1 << i);
    dd[i] = upper - t;
    aa[i] = kernel(t) * std::pow(dd[i], sigma);
    if (!std::isfinite(aa[i]) || !(dd[i] > 0.0)) model_ok = false;
  }
  double c0 = 0.0, c01 = 0.0, c012 = 0.0, d0 = 0.0, d1 = 0.0;
  if (model_ok) {
    c0 = aa[0];
    d0 = dd[0];
    d1 = dd[1];
    c01 = (aa[1] - aa[0]) / (dd[1] - dd[0]);
    c012 = ((aa[2] - aa[1]) / (dd[2] - dd[1]) - c01) / (dd[2] - dd[0]);
  }

  const auto transformed = [&, c0, c01, c012, d0, d1](double s) -> double {
    const double d = std::exp(m * std::log(s));
    if (d >= d0 && upper - d < upper) {
      return kernel(upper - d) * m * std::pow(s, m - 1.0);
    }
    // the substitution cancels the singular factor: m * s^(m-1) * d^(-sigma) == m
    return m * (c0 + (d - d0) * (c01 + (d - d1) * c012));
  };
  return integrate(transformed, 0.0, s_upper, cfg);
}

}  // namespace gentrig
