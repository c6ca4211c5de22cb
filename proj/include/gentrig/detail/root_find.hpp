// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace gentrig::detail {

struct RootResult {
  double x = 0.0;
  double residual = 0.0;  // f(x) - target at the returned point
  int iterations = 0;
};

// Bracketed solver for a (weakly) increasing objective: Illinois-damped false
// position with a bisection safeguard.  Requires f(lo) <= target <= f(hi);
// terminates when |f(x) - target| <= res_tol or the bracket width shrinks
// below width_tol (plus a machine-representability floor).
template <class F>
RootResult solve_increasing(F&& f, double lo, double hi, double f_lo, double f_hi,
                            double target, double res_tol, double width_tol) {
  double a = lo, b = hi;
  double ra = f_lo - target;
  double rb = f_hi - target;
  if (ra > 0.0 || rb < 0.0) {
    throw std::logic_error("solve_increasing: target not bracketed");
  }
  if (-ra <= res_tol) return {a, ra, 0};
  if (rb <= res_tol) return {b, rb, 0};

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  double best_x = 0.5 * (a + b);
  double best_r = std::numeric_limits<double>::infinity();
  int side = 0;
  for (int it = 1; it <= 120; ++it) {
    double x = (rb > ra) ? (a * rb - b * ra) / (rb - ra) : 0.5 * (a + b);
    if (!(x > a && x < b)) x = 0.5 * (a + b);
    const double r = f(x) - target;
    if (std::abs(r) < std::abs(best_r)) {
      best_x = x;
      best_r = r;
    }
    if (std::abs(r) <= res_tol) return {x, r, it};
    if (r < 0.0) {
      a = x;
      ra = r;
      if (side == -1) rb *= 0.5;  // Illinois: halve the stale residual
      side = -1;
    } else {
      b = x;
      rb = r;
      if (side == 1) ra *= 0.5;
      side = 1;
    }
    const double width_floor =
        std::max(width_tol, 4.0 * kEps * std::max(std::abs(a), std::abs(b)));
    if (b - a <= width_floor) return {best_x, best_r, it};
  }
  return {best_x, best_r, 120};
}

}  // namespace gentrig::detail
