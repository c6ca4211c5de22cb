// SPDX-License-Identifier: Apache-2.0
#include "gentrig/param_calculus.hpp"

#include <cmath>
#include <limits>

#include "gentrig/detail/kernels.hpp"

namespace gentrig {
namespace {

using detail::unit_point;
using detail::unit_point_from_dist;
using detail::UnitPoint;

bool is_unit_domain(FunctionKind f) {
  return f == FunctionKind::Sin || f == FunctionKind::Tanh;
}

// Pointwise kernel dispatch.  Unit-domain families are addressed through a
// UnitPoint so the distance to 1 survives.
struct Kernels {
  FunctionKind fam;

  double weight(double p, const UnitPoint& pt) const {
    switch (fam) {
      case FunctionKind::Sin: return detail::sin_weight(p, pt);
      case FunctionKind::Tan: return detail::tan_weight(p, pt.t);
      case FunctionKind::Sinh: return detail::sinh_weight(p, pt.t);
      default: return detail::tanh_weight(p, pt);
    }
  }
  double recip_weight(double p, const UnitPoint& pt) const {
    switch (fam) {
      case FunctionKind::Sin: return detail::sin_recip_weight(p, pt);
      case FunctionKind::Tan: return detail::tan_recip_weight(p, pt.t);
      case FunctionKind::Sinh: return detail::sinh_recip_weight(p, pt.t);
      default: return detail::tanh_recip_weight(p, pt);
    }
  }
  double ratio_dp(double p, const UnitPoint& pt) const {  // f_xp / f_x
    switch (fam) {
      case FunctionKind::Sin: return detail::sin_ratio_dp(p, pt);
      case FunctionKind::Tan: return detail::tan_ratio_dp(p, pt.t);
      case FunctionKind::Sinh: return detail::sinh_ratio_dp(p, pt.t);
      default: return detail::tanh_ratio_dp(p, pt);
    }
  }
  double ratio_dx(double p, const UnitPoint& pt) const {  // f_xx / f_x
    switch (fam) {
      case FunctionKind::Sin: return detail::sin_ratio_dx(p, pt);
      case FunctionKind::Tan: return detail::tan_ratio_dx(p, pt.t);
      case FunctionKind::Sinh: return detail::sinh_ratio_dx(p, pt.t);
      default: return detail::tanh_ratio_dx(p, pt);
    }
  }
  double weight_dp(double p, const UnitPoint& pt) const {  // f_xp
    switch (fam) {
      case FunctionKind::Sin: return detail::sin_weight_dp(p, pt);
      case FunctionKind::Tan: return detail::tan_weight_dp(p, pt.t);
      case FunctionKind::Sinh: return detail::sinh_weight_dp(p, pt.t);
      default: return detail::tanh_weight_dp(p, pt);
    }
  }
  double weight_dpp(double p, const UnitPoint& pt) const {  // f''_pp kernel
    switch (fam) {
      case FunctionKind::Sin: return detail::sin_weight_dpp(p, pt);
      case FunctionKind::Tan: return detail::tan_weight_dpp(p, pt.t);
      case FunctionKind::Sinh: return detail::sinh_weight_dpp(p, pt.t);
      default: return detail::tanh_weight_dpp(p, pt);
    }
  }
};

struct IntegralValue {
  double value;
  double err;
};

// integrate(), retried with a matching absolute floor when the value turns
// out to be tiny: the kernels here shrink like y^(p+1) at small y and the
// default abs_tol would otherwise dominate the error bound.
template <class Kern>
IntegralValue integrate_rel(Kern&& kern, double lo, double hi,
                            const QuadratureConfig& cfg) {
  QuadResult r = integrate(kern, lo, hi, cfg);
  if (r.value != 0.0 && std::isfinite(r.value) &&
      r.err_estimate > 4.0 * cfg.rel_tol * std::abs(r.value)) {
    QuadratureConfig tight = cfg;
    tight.abs_tol = std::max(0.1 * cfg.rel_tol * std::abs(r.value), 1e-290);
    tight.max_levels = cfg.max_levels + 2;
    const QuadResult r2 = integrate(kern, lo, hi, tight);
    if (r2.err_estimate < r.err_estimate) r = r2;
  }
  return {r.value, r.err_estimate};
}

// Integral of kern over [0, x], addressed by distance for the unit-domain
// families so the boundary layer near t = 1 stays resolvable, and through a
// log substitution on [1, x] for the half-line families with large x.
template <class KernT, class KernDist>
IntegralValue family_integral(bool unit, double x, double dist, KernT&& kern,
                              KernDist&& kern_at_dist, const QuadratureConfig& cfg) {
  if (x <= 0.0) return {0.0, 0.0};
  if (unit) {
    constexpr double kSplit = 0.1;
    if (dist >= kSplit) {
      return integrate_rel(kern, 0.0, x, cfg);
    }
    const IntegralValue head = integrate_rel(kern, 0.0, 1.0 - kSplit, cfg);
    const auto layer = [&](double u) {
      const double v = std::exp(u);
      return v * kern_at_dist(v);
    };
    const IntegralValue tail =
        integrate_rel(layer, std::log(dist), std::log(kSplit), cfg);
    return {head.value + tail.value, head.err + tail.err};
  }
  if (x <= 2.0) {
    return integrate_rel(kern, 0.0, x, cfg);
  }
  const IntegralValue head = integrate_rel(kern, 0.0, 1.0, cfg);
  const auto logtail = [&](double u) {
    const double t = std::exp(u);
    return t * kern(t);
  };
  const IntegralValue tail = integrate_rel(logtail, 0.0, std::log(x), cfg);
  return {head.value + tail.value, head.err + tail.err};
}

struct FamilyPoint {
  double x;     // g(p, y)
  double dist;  // 1 - x for unit-domain families (exact near saturation)
  double x_err;
};

// Recover x = g(p,y) once per report; validates that y lies in the family's
// principal domain.
FamilyPoint invert_family(FunctionKind fam, Parameter p, double y,
                          const EvalOptions& o) {
  const double pv = p.value();
  if (y < 0.0) throw DomainError("param_calculus: y must be >= 0");
  if (!p.sub_critical() &&
      (fam == FunctionKind::Sin || fam == FunctionKind::Tan)) {
    const double half = pi_p(p).value / 2.0;
    if (y > half || (fam == FunctionKind::Tan && y >= half)) {
      throw DomainError("param_calculus: y outside the principal domain");
    }
  }
  FamilyPoint pt{};
  if (fam == FunctionKind::Tanh) {
    const ForwardEval fe = forward_eval(fam, p, y, o);
    pt.x = fe.value;
    pt.x_err = fe.abs_err;
    pt.dist = 1.0 - fe.value;
    if (pt.dist < 1e-3) {
      pt.dist = tanh_p_distance(p, y, o);
      pt.x = 1.0 - pt.dist;
      pt.x_err = std::abs(pt.dist) * (pv * o.residual_rel * std::max(1.0, y));
    }
    return pt;
  }
  const ForwardEval fe = forward_eval(fam, p, y, o);
  pt.x = fe.value;
  pt.x_err = fe.abs_err;
  pt.dist = 1.0 - fe.value;
  if (fam == FunctionKind::Sin && pt.dist < 1e-8) {
    throw BoundaryProximity("param_calculus: sin family x within 1e-8 of 1");
  }
  return pt;
}

struct DerivativeTriple {
  double g = 0.0;
  double dg = 0.0;
  double d2g = 0.0;
  double d2logg = 0.0;
  double err_dg = 0.0;
  double err_d2g = 0.0;
  double err_d2logg = 0.0;
};

struct Assembled {
  double dg;
  double d2g;
  double d2logg;
};

// Assemble the three derivative formulas from balanced ratios; near the
// tanh saturation boundary the bare factors overflow long before these
// combinations do.
Assembled assemble(const Kernels& k, double p, const UnitPoint& pt, double i1,
                   double i2) {
  const double x = pt.t;
  const double recip = k.recip_weight(p, pt);
  const double rdp = k.ratio_dp(p, pt);
  const double rdx = k.ratio_dx(p, pt);
  const double a1 = i1 * recip;  // f'_p / f'_x
  const double a2 = i2 * recip;  // f''_pp / f'_x
  Assembled out{};
  out.dg = -a1;
  out.d2g = 2.0 * a1 * rdp - a2 - a1 * a1 * rdx;
  const double u1 = a1 / x;
  out.d2logg = 2.0 * u1 * rdp - a2 / x - u1 * u1 * x * rdx - u1 * u1;
  return out;
}

DerivativeTriple derivative_triple_eval(FunctionKind fam, Parameter p, double y,
                       const EvalOptions& o) {
  const double pv = p.value();
  const Kernels k{fam};
  const FamilyPoint fp = invert_family(fam, p, y, o);
  DerivativeTriple ev;
  ev.g = fp.x;
  if (fp.x <= 0.0) return ev;  // all derivative integrals are empty at y = 0

  const bool unit = is_unit_domain(fam);
  const UnitPoint pt = unit ? unit_point_from_dist(fp.dist) : unit_point(fp.x);
  const auto kern_dp = [&](double t) { return k.weight_dp(pv, unit_point(t)); };
  const auto kern_dp_dist = [&](double v) {
    return k.weight_dp(pv, unit_point_from_dist(v));
  };
  const auto kern_dpp = [&](double t) { return k.weight_dpp(pv, unit_point(t)); };
  const auto kern_dpp_dist = [&](double v) {
    return k.weight_dpp(pv, unit_point_from_dist(v));
  };
  const IntegralValue i1 =
      family_integral(unit, fp.x, fp.dist, kern_dp, kern_dp_dist, o.quad);
  const IntegralValue i2 =
      family_integral(unit, fp.x, fp.dist, kern_dpp, kern_dpp_dist, o.quad);

  const Assembled main = assemble(k, pv, pt, i1.value, i2.value);
  ev.dg = main.dg;
  ev.d2g = main.d2g;
  ev.d2logg = main.d2logg;

  // Error propagation: quadrature errors through the formula coefficients,
  // the inversion residual through a locally re-assembled slope.
  const double recip = k.recip_weight(pv, pt);
  const double rdp = k.ratio_dp(pv, pt);
  const double rdx = k.ratio_dx(pv, pt);
  const double x = pt.t;
  const double a1 = i1.value * recip;
  const double dd2g_di1 = 2.0 * recip * (rdp - a1 * rdx);
  const double dd2logg_di1 =
      (2.0 * recip / x) * (rdp - a1 * rdx - a1 / x);
  ev.err_dg = recip * i1.err;
  ev.err_d2g = std::abs(dd2g_di1) * i1.err + recip * i2.err;
  ev.err_d2logg = std::abs(dd2logg_di1) * i1.err + (recip / x) * i2.err;

  const double scale = unit ? std::min(fp.x, fp.dist) : fp.x;
  const double h = 1e-6 * scale;
  if (h > 0.0 && fp.x_err > 0.0) {
    const UnitPoint pshift =
        unit ? unit_point_from_dist(fp.dist + h) : unit_point(fp.x - h);
    const double i1s = i1.value - k.weight_dp(pv, pt) * h;
    const double i2s = i2.value - k.weight_dpp(pv, pt) * h;
    const Assembled shifted = assemble(k, pv, pshift, i1s, i2s);
    ev.err_dg += std::abs(shifted.dg - main.dg) / h * fp.x_err;
    ev.err_d2g += std::abs(shifted.d2g - main.d2g) / h * fp.x_err;
    ev.err_d2logg += std::abs(shifted.d2logg - main.d2logg) / h * fp.x_err;
  }
  return ev;
}

void require_bundle_family(FunctionKind fam) {
  if (fam == FunctionKind::Cos || fam == FunctionKind::Cosh) {
    throw UnsupportedFamily("kernel bundles exist for Sin, Tan, Sinh, Tanh only");
  }
}

}  // namespace

double KernelBundle::f_x(double p, double t) const {
  return Kernels{family_}.weight(p, unit_point(t));
}
double KernelBundle::f_xx(double p, double t) const {
  const Kernels k{family_};
  const UnitPoint pt = unit_point(t);
  return k.weight(p, pt) * k.ratio_dx(p, pt);
}
double KernelBundle::f_xp(double p, double t) const {
  return Kernels{family_}.weight_dp(p, unit_point(t));
}
double KernelBundle::f_p_integrand(double p, double t) const {
  return Kernels{family_}.weight_dp(p, unit_point(t));
}
double KernelBundle::f_pp_integrand(double p, double t) const {
  return Kernels{family_}.weight_dpp(p, unit_point(t));
}

KernelBundle make_bundle(FunctionKind family) {
  require_bundle_family(family);
  return KernelBundle(family);
}

double inverse_dp(const KernelBundle& bundle, Parameter p, double y,
                  const EvalOptions& opts) {
  return derivative_triple_eval(bundle.family(), p, y, opts).dg;
}

double inverse_d2p(const KernelBundle& bundle, Parameter p, double y,
                   const EvalOptions& opts) {
  return derivative_triple_eval(bundle.family(), p, y, opts).d2g;
}

double inverse_d2p_log(const KernelBundle& bundle, Parameter p, double y,
                       const EvalOptions& opts) {
  if (y == 0.0) throw DomainError("inverse_d2p_log: x = 0, log g undefined");
  return derivative_triple_eval(bundle.family(), p, y, opts).d2logg;
}

double inverse_d2p_remark(const KernelBundle& bundle, Parameter p, double y,
                          const EvalOptions& opts) {
  const FunctionKind fam = bundle.family();
  const double pv = p.value();
  const Kernels k{fam};
  const FamilyPoint fp = invert_family(fam, p, y, opts);
  if (fp.x <= 0.0) return 0.0;
  const bool unit = is_unit_domain(fam);
  const UnitPoint pt = unit ? unit_point_from_dist(fp.dist) : unit_point(fp.x);
  const auto kern_dp = [&](double t) { return k.weight_dp(pv, unit_point(t)); };
  const auto kern_dp_dist = [&](double v) {
    return k.weight_dp(pv, unit_point_from_dist(v));
  };
  const auto kern_dpp = [&](double t) { return k.weight_dpp(pv, unit_point(t)); };
  const auto kern_dpp_dist = [&](double v) {
    return k.weight_dpp(pv, unit_point_from_dist(v));
  };
  const IntegralValue i1 =
      family_integral(unit, fp.x, fp.dist, kern_dp, kern_dp_dist, opts.quad);
  const IntegralValue i2 =
      family_integral(unit, fp.x, fp.dist, kern_dpp, kern_dpp_dist, opts.quad);
  // ratio = f'_p/f'_x; d2g = ratio * d(ratio)/dx - d(ratio)/dp
  const double recip = k.recip_weight(pv, pt);
  const double ratio = i1.value * recip;
  const double dratio_dx =
      k.weight_dp(pv, pt) * recip - ratio * k.ratio_dx(pv, pt);
  const double dratio_dp = i2.value * recip - ratio * k.ratio_dp(pv, pt);
  return ratio * dratio_dx - dratio_dp;
}

DerivativeEvaluation evaluate_derivatives(FunctionKind kind, Parameter p, double y,
                                          const EvalOptions& opts) {
  if (y == 0.0) {
    const double g0 =
        (kind == FunctionKind::Cos || kind == FunctionKind::Cosh) ? 1.0 : 0.0;
    return {{g0, 0.0, 0.0, 0.0, 0.0}, 0.0, 0.0, 0.0};
  }
  DerivativeEvaluation out{};
  switch (kind) {
    case FunctionKind::Sin:
    case FunctionKind::Tan:
    case FunctionKind::Sinh:
    case FunctionKind::Tanh: {
      const DerivativeTriple ev = derivative_triple_eval(kind, p, y, opts);
      out.report = {ev.g, ev.dg, ev.d2g, ev.d2logg, 0.0};
      out.err_dg = ev.err_dg;
      out.err_d2g = ev.err_d2g;
      out.err_d2logg = ev.err_d2logg;
      break;
    }
    case FunctionKind::Cos:
    case FunctionKind::Cosh: {
      const bool trig = kind == FunctionKind::Cos;
      const DerivativeTriple s =
          derivative_triple_eval(trig ? FunctionKind::Sin : FunctionKind::Sinh, p, y, opts);
      const DerivativeTriple t =
          derivative_triple_eval(trig ? FunctionKind::Tan : FunctionKind::Tanh, p, y, opts);
      DerivativeReport r{};
      r.g = s.g / t.g;  // cos = sin / tan, cosh = sinh / tanh
      r.d2logg_dp2 = s.d2logg - t.d2logg;
      r.dg_dp = r.g * (s.dg / s.g - t.dg / t.g);
      r.d2g_dp2 = r.g * r.d2logg_dp2 + r.dg_dp * r.dg_dp / r.g;
      out.report = r;
      out.err_d2logg = s.err_d2logg + t.err_d2logg;
      out.err_dg = std::abs(r.g) * (s.err_dg / s.g + t.err_dg / t.g);
      out.err_d2g = std::abs(r.g) * out.err_d2logg +
                    2.0 * std::abs(r.dg_dp / r.g) * out.err_dg +
                    std::abs(r.d2logg_dp2 + (r.dg_dp / r.g) * (r.dg_dp / r.g)) *
                        out.err_dg;
      break;
    }
  }
  out.report.quad_err = std::max({out.err_dg, out.err_d2g, out.err_d2logg});
  return out;
}

DerivativeReport derivative_report(FunctionKind kind, Parameter p, double y,
                                   const EvalOptions& opts) {
  return evaluate_derivatives(kind, p, y, opts).report;
}

}  // namespace gentrig
