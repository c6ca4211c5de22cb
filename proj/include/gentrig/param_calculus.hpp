// SPDX-License-Identifier: Apache-2.0
//
// Exact parameter derivatives of the inverse functions: with y = f(p,x) a
// defining integral and g(p,y) = x its inverse,
//
//   dg/dp      = -f'_p / f'_x
//   d2g/dp2    = (f'_x)^-2 { 2 f'_p f''_xp - f'_x f''_pp - (f'_p)^2 f''_xx / f'_x }
//   d2(log g)  = (x f'_x)^-2 { 2x f'_p f''_px - x f'_x f''_pp
//                              - x (f'_p)^2 f''_xx / f'_x - (f'_p)^2 }
//
// where f'_p and f''_pp are integrals of the pointwise kernels held in a
// KernelBundle.  The sign of the log form certifies log-convexity/concavity
// in p pointwise.
#pragma once

#include "gentrig/functions.hpp"

namespace gentrig {

/// The five evaluable partial-derivative kernels of one defining integral.
/// Families: Sin (weight (1-t^p)^(-1/p)), Tan (1/(1+t^p)),
/// Sinh ((1+t^p)^(-1/p)), Tanh (1/(1-t^p)).  Cos and Cosh are derived
/// families and have no bundle.
class KernelBundle {
 public:
  FunctionKind family() const { return family_; }

  double f_x(double p, double t) const;   ///< df/dx (the weight itself)
  double f_xx(double p, double t) const;  ///< d2f/dx2
  double f_xp(double p, double t) const;  ///< d2f/dxdp
  /// Kernel whose integral over [0,x] is f'_p (pointwise equal to f_xp).
  double f_p_integrand(double p, double t) const;
  /// Kernel whose integral over [0,x] is f''_pp.
  double f_pp_integrand(double p, double t) const;

 private:
  friend KernelBundle make_bundle(FunctionKind family);
  explicit KernelBundle(FunctionKind f) : family_(f) {}
  FunctionKind family_;
};

/// Throws UnsupportedFamily for Cos and Cosh.
KernelBundle make_bundle(FunctionKind family);

/// g and its parameter derivatives at one (p, y).
struct DerivativeReport {
  double g;
  double dg_dp;
  double d2g_dp2;
  double d2logg_dp2;
  double quad_err;  ///< propagated error bound for the derivative fields
};

double inverse_dp(const KernelBundle& bundle, Parameter p, double y,
                  const EvalOptions& opts = {});
double inverse_d2p(const KernelBundle& bundle, Parameter p, double y,
                   const EvalOptions& opts = {});
double inverse_d2p_log(const KernelBundle& bundle, Parameter p, double y,
                       const EvalOptions& opts = {});
/// Second derivative through the alternate rewriting
/// (1/2) d/dx (f'_p/f'_x)^2 - d/dp (f'_p/f'_x); same value as inverse_d2p
/// up to rounding, assembled along a different path.
double inverse_d2p_remark(const KernelBundle& bundle, Parameter p, double y,
                          const EvalOptions& opts = {});

/// All derivatives at one point.  Cos and Cosh reports are assembled from
/// the Sin/Tan (resp. Sinh/Tanh) reports through
/// (log cos)''_pp = (log sin)''_pp - (log tan)''_pp and its hyperbolic twin.
DerivativeReport derivative_report(FunctionKind kind, Parameter p, double y,
                                   const EvalOptions& opts = {});

/// derivative_report plus the error bound of each field separately; the
/// report's quad_err is the maximum of the three.  Scan margins compare a
/// single field against its own bound, which matters where the fields have
/// very different magnitudes.
struct DerivativeEvaluation {
  DerivativeReport report;
  double err_dg;
  double err_d2g;
  double err_d2logg;
};
DerivativeEvaluation evaluate_derivatives(FunctionKind kind, Parameter p, double y,
                                          const EvalOptions& opts = {});

}  // namespace gentrig
