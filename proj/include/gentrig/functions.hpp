// SPDX-License-Identifier: Apache-2.0
//
// Generalized trigonometric and hyperbolic functions for finite p > 0.
//
// The inverse functions (arcsin_p, arccos_p, arctan_p, arcsinh_p, arctanh_p)
// are the defining integrals, evaluated by adaptive quadrature.  The forward
// functions invert them by bracketed root-finding on the principal domain and
// extend by reflection, oddness/evenness and 2*pi_p periodicity (p > 1) or by
// oddness alone (p <= 1).
#pragma once

#include <optional>
#include <string_view>

#include "gentrig/errors.hpp"
#include "gentrig/quadrature.hpp"

namespace gentrig {

/// Validated family parameter: p > 0, finite.
class Parameter {
 public:
  explicit Parameter(double p);
  double value() const { return p_; }
  /// True when p <= 1, i.e. pi_p is infinite and the trig functions are
  /// not periodic.
  bool sub_critical() const { return p_ <= 1.0; }

 private:
  double p_;
};

/// Generalized half period pi_p; +infinity for p <= 1.
struct HalfPeriod {
  double value;
  bool is_finite() const;
};

enum class FunctionKind { Sin, Cos, Tan, Sinh, Cosh, Tanh };

std::string_view to_string(FunctionKind kind);
std::optional<FunctionKind> kind_from_string(std::string_view name);

/// Evaluation tolerances shared by quadrature and inversion.
struct EvalOptions {
  QuadratureConfig quad{};
  double residual_rel = 1e-12;  ///< accept x when |F(x)-y| <= residual_rel*max(1,|y|)
  double bracket_tol = 1e-15;   ///< ... or when the x-bracket width falls below this
};

/// Tightened preset for finite-difference oracles, where forward-value noise
/// enters second differences divided by h^2.
EvalOptions oracle_options();

/// pi_p = 2*pi / (p*sin(pi/p)) for p > 1, +infinity for p <= 1.
HalfPeriod pi_p(Parameter p);

/// Quadrature route for pi_p (p > 1 only): 2*Integral_0^1 (1-t^p)^(-1/p) dt.
/// Cross-checks the closed form; throws DivergentEndpoint for p <= 1.
double pi_p_quadrature(Parameter p, const QuadratureConfig& cfg = {});

double arcsin_p(Parameter p, double x, const EvalOptions& opts = {});
double arccos_p(Parameter p, double x, const EvalOptions& opts = {});
/// arccos_p through its own integral representation (the substituted form);
/// agrees with arccos_p and exists as an independent route for checks.
double arccos_p_integral(Parameter p, double x, const EvalOptions& opts = {});
double arctan_p(Parameter p, double x, const EvalOptions& opts = {});
double arcsinh_p(Parameter p, double x, const EvalOptions& opts = {});
double arctanh_p(Parameter p, double x, const EvalOptions& opts = {});

double sin_p(Parameter p, double y, const EvalOptions& opts = {});
double cos_p(Parameter p, double y, const EvalOptions& opts = {});
double tan_p(Parameter p, double y, const EvalOptions& opts = {});
double sinh_p(Parameter p, double y, const EvalOptions& opts = {});
double cosh_p(Parameter p, double y, const EvalOptions& opts = {});
double tanh_p(Parameter p, double y, const EvalOptions& opts = {});

/// Forward evaluation with an a-posteriori absolute error estimate
/// (inversion residual and quadrature error mapped through the local slope).
struct ForwardEval {
  double value;
  double abs_err;
};
ForwardEval forward_eval(FunctionKind kind, Parameter p, double y,
                         const EvalOptions& opts = {});

/// Distance to saturation 1 - tanh_p(y) for y >= 0, solved in log-distance
/// space; exact even where tanh_p(y) rounds to 1.  Throws BoundaryProximity
/// when the distance underflows the representable range.
double tanh_p_distance(Parameter p, double y, const EvalOptions& opts = {});

}  // namespace gentrig
