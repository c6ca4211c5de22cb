// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>

#include "gentrig/errors.hpp"

namespace gentrig {

/// Tolerance targets for adaptive integration.
struct QuadratureConfig {
  double rel_tol = 1e-12;  ///< relative tolerance on the integral value
  double abs_tol = 1e-14;  ///< absolute floor below which refinement stops
  int max_levels = 12;     ///< maximum refinement depth (>= 1)
};

/// Value plus error estimate of one integration.
///
/// `converged == false` means the requested tolerance was not certified at
/// max_levels (the best value is still returned; callers decide what to do).
struct QuadResult {
  double value = 0.0;
  double err_estimate = 0.0;
  int levels_used = 0;
  bool converged = false;
};

/// Integrate `kernel` over (lower, upper) with a double-exponential
/// (tanh-sinh) rule refined level by level until the difference between
/// consecutive levels drops below max(rel_tol*|value|, abs_tol).
///
/// The kernel is never evaluated exactly at either endpoint, so integrable
/// endpoint blow-ups (log singularities in particular) are tolerated.
/// Non-finite kernel values are treated as zero.  Deterministic: identical
/// inputs produce bit-identical results.
///
/// Throws InvalidInterval unless lower < upper and both are finite.
QuadResult integrate(const std::function<double(double)>& kernel, double lower,
                     double upper, const QuadratureConfig& cfg = {});

/// Integrate a kernel with an algebraic singularity at the upper endpoint,
/// kernel(t) ~ C * (upper - t)^(-singularity_exponent) as t -> upper, with
/// exponent in (0,1).
///
/// The singular factor is removed by the substitution s = (upper-t)^(1-e),
/// which makes the transformed integrand bounded; inside a small guard band
/// next to the singular point (where upper - t would round away in double
/// precision) the kernel is replaced by its extrapolated local model
/// C(d)*d^(-e).  No node is ever placed at the singular endpoint.  Accuracy
/// near the endpoint requires the kernel itself to be evaluable with small
/// relative error there (write 1 - t^p as -expm1(p*log(t)) and similar).
///
/// Throws NonIntegrable for exponent >= 1, std::invalid_argument for
/// exponent <= 0, InvalidInterval as integrate().
QuadResult integrate_singular_upper(const std::function<double(double)>& kernel,
                                    double lower, double upper,
                                    double singularity_exponent,
                                    const QuadratureConfig& cfg = {});

}  // namespace gentrig
