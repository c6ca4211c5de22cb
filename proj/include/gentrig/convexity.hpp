// SPDX-License-Identifier: Apache-2.0
//
// Numerical certification of parameter-convexity properties and the
// Turan-type inequalities: grid scans with signed margins and propagated
// error bounds, the corollary condition expressions, and the auxiliary
// proof quantities evaluated as sign checks.
#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "gentrig/param_calculus.hpp"

namespace gentrig {

enum class Verdict { Holds, Fails, Inconclusive };
std::string_view to_string(Verdict verdict);
std::optional<Verdict> verdict_from_string(std::string_view name);

/// Signed inequality slack: positive in the claimed direction.  The verdict
/// compares the slack against the propagated numerical error bound, so a
/// cell is only Holds/Fails when the sign is trustworthy.
struct Margin {
  double value;
  double err_bound;
  Verdict verdict;
};
Margin make_margin(double value, double err_bound);

enum class ScanProperty {
  TuranSin,
  TuranCos,
  TuranTan,
  TuranSinh,
  TuranTanh,
  LogConcave,
  LogConvex,
  Concave,
};
std::string_view to_string(ScanProperty property);
std::optional<ScanProperty> property_from_string(std::string_view name);
/// Kind implied by a Turan property; nullopt for the convexity properties.
std::optional<FunctionKind> turan_kind(ScanProperty property);

enum class ScanMode { Analytic, FiniteDifference };
std::string_view to_string(ScanMode mode);

struct ScanConfig {
  ScanMode mode = ScanMode::Analytic;
  EvalOptions eval{};
  double fd_step = 1e-3;  ///< p-step of the finite-difference mode
  int threads = 1;
};

struct ScanReport {
  FunctionKind kind;
  ScanProperty property;
  std::vector<double> p_grid;
  std::vector<double> y_grid;
  std::vector<Margin> margins;  ///< row-major, margins[ip * y_grid.size() + iy]
  ScanConfig config;

  const Margin& at(std::size_t ip, std::size_t iy) const {
    return margins[ip * y_grid.size() + iy];
  }
  std::size_t fails() const;
  std::size_t inconclusive() const;
};

/// Turan slack at (p, y), oriented so positive = the conjectured direction:
///   sin:  sin_p^2  - sin_{p-1} sin_{p+1}     cos analogous
///   tan:  tan_{p-1} tan_{p+1} - tan_p^2      sinh analogous
///   tanh: tanh_p^2 - tanh_{p-1} tanh_{p+1}
/// Requires p > 1.  Trig kinds need y in (0,1), hyperbolic y > 0.
/// Near tanh saturation the margin is computed from the distances
/// 1 - tanh_q(y), which stays meaningful where the direct products round
/// to zero slack.
Margin turan_margin(FunctionKind kind, Parameter p, double y,
                    const EvalOptions& opts = {});

enum class CorollaryVariant { LogConvexity, PlainConvexity };

/// Left-hand side of the printed corollary condition for the family:
/// Sin has both variants, Tan both, Sinh log-convexity only, Tanh plain
/// concavity only.  Positive/negative as printed; the certified theorems fix
/// the sign on their regions.  Throws UnsupportedFamily for combinations the
/// corollaries do not define, BoundaryProximity within 1e-8 of x = 1 for the
/// unit-domain families.
double corollary_condition(FunctionKind family, CorollaryVariant variant,
                           Parameter p, double x, const EvalOptions& opts = {});

struct Lemma3Sides {
  double lhs;
  double rhs;
  double rhs_err;
};
/// Both sides of the key estimate: requires p > 1, s in (0,1); lhs < rhs.
Lemma3Sides lemma3_check(Parameter p, double s, const QuadratureConfig& cfg = {});

struct Lemma3Constant {
  double quadrature;   // Int_0^1 u log^2(u) ((1-u)/(1+u)^3 - 1/4) du
  double closed_form;  // pi^2/3 - log 4 - (3/2) zeta(3) - 1/16
  double quad_err;
};
Lemma3Constant lemma3_constant(const QuadratureConfig& cfg = {});

/// zeta(3) by direct series summation, tail bound below 1e-12.
double zeta3();

/// G(x) = x eta^2 / phi(p,x)^(p-1) - Int_0^x phi''_pp dt with
/// eta = [log phi]'_p; negative on (0,1) for every p > 0.
double theorem1_G(Parameter p, double x, const EvalOptions& opts = {});

/// Quarter discriminant of the sinh-family quadratic; negative for p >= 1
/// (reported without assertion below).
double theorem4_discriminant(Parameter p, double x);

struct Theorem5Ratios {
  double ratio;   // u/v, the two boundary-layer integrals
  double bound1;  // u'/v' = (x^p+1) log(1/x) / (1-x^p)
  double bound2;  // 2 x^p log(1/x) / (1-x^p)
};
/// The monotone-quotient chain ratio > bound1 > bound2 on (0,1).
Theorem5Ratios theorem5_ratio_check(Parameter p, double x,
                                    const QuadratureConfig& cfg = {});

std::vector<double> geometric_grid(double lo, double hi, int n);
std::vector<double> uniform_grid(double lo, double hi, int n);

/// Evaluate one margin per (p, y) cell.  Per-cell failures (domain errors,
/// boundary proximity) are recorded as Inconclusive, never aborting the
/// scan.  Cells are independent and the report is identical for any thread
/// count.
ScanReport scan(ScanProperty property, FunctionKind kind,
                std::vector<double> p_grid, std::vector<double> y_grid,
                const ScanConfig& cfg = {});

struct P0Entry {
  double y;
  bool sign_change;  // false = concavity held over the whole search interval
  double threshold;  // NaN when sign_change is false
};
struct P0Result {
  double p0_estimate;  // sup of thresholds; NaN if no sign change anywhere
  bool any_change;
  std::vector<P0Entry> entries;
};
/// Exploratory search for the concavity threshold of p -> sin_p(y): bisects
/// on the sign of d2 sin_p / dp2 over p_search for each y.
P0Result find_p0(const std::vector<double>& y_grid, double p_lo, double p_hi,
                 double tol, const EvalOptions& opts = {});

}  // namespace gentrig
