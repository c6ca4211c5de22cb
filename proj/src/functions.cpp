// SPDX-License-Identifier: Apache-2.0
#include "gentrig/functions.hpp"

#include <cmath>
#include <limits>

#include "gentrig/detail/kernels.hpp"
#include "gentrig/detail/root_find.hpp"

namespace gentrig {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double require_finite_arg(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string(what) + ": non-finite argument");
  return v;
}

double pi_half_closed(double p) { return kPi / (p * std::sin(kPi / p)); }

// ---------------------------------------------------------------------------
// defining integrals
// ---------------------------------------------------------------------------

struct IntegralValue {
  double value;
  double err;
};

// arcsin_p integral on [0,x].  For p > 1 and x near 1 the complementary
// integral over [x,1] is evaluated with the singular-endpoint rule and
// subtracted from pi_p/2, which is both faster and more accurate than
// chasing the boundary layer directly.
IntegralValue arcsin_integral(double p, double x, const EvalOptions& o) {
  if (x <= 0.0) return {0.0, 0.0};
  const auto kern = [p](double t) { return detail::sin_weight(p, detail::unit_point(t)); };
  if (p > 1.0 && x > 0.9) {
    const double half = pi_half_closed(p);
    if (x >= 1.0) return {half, 0.0};
    const QuadResult tail = integrate_singular_upper(kern, x, 1.0, 1.0 / p, o.quad);
    return {half - tail.value, tail.err_estimate};
  }
  const QuadResult r = integrate(kern, 0.0, x, o.quad);
  return {r.value, r.err_estimate};
}

IntegralValue arctan_integral(double p, double x, const EvalOptions& o) {
  if (x <= 0.0) return {0.0, 0.0};
  const auto kern = [p](double t) { return detail::tan_weight(p, t); };
  if (x <= 1.0) {
    const QuadResult r = integrate(kern, 0.0, x, o.quad);
    return {r.value, r.err_estimate};
  }
  const QuadResult head = integrate(kern, 0.0, 1.0, o.quad);
  // t = e^u keeps the tail short and smooth for any x
  const auto tail_kern = [p](double u) {
    return std::exp(u - detail::log1p_exp(p * u));
  };
  const QuadResult tail = integrate(tail_kern, 0.0, std::log(x), o.quad);
  return {head.value + tail.value, head.err_estimate + tail.err_estimate};
}

IntegralValue arcsinh_integral(double p, double x, const EvalOptions& o) {
  if (x <= 0.0) return {0.0, 0.0};
  const auto kern = [p](double t) { return detail::sinh_weight(p, t); };
  if (x <= 1.0) {
    const QuadResult r = integrate(kern, 0.0, x, o.quad);
    return {r.value, r.err_estimate};
  }
  const QuadResult head = integrate(kern, 0.0, 1.0, o.quad);
  const auto tail_kern = [p](double u) {
    return std::exp(u - detail::log1p_exp(p * u) / p);
  };
  const QuadResult tail = integrate(tail_kern, 0.0, std::log(x), o.quad);
  return {head.value + tail.value, head.err_estimate + tail.err_estimate};
}

// arctanh_p at the point 1 - dist, addressed by the distance so the boundary
// layer stays resolvable when dist is far below machine epsilon.
IntegralValue arctanh_integral_at_dist(double p, double dist, const EvalOptions& o) {
  if (dist >= 1.0) return {0.0, 0.0};
  constexpr double kSplit = 0.1;  // layer = { t : 1 - t < kSplit }
  const auto kern = [p](double t) { return detail::tanh_weight(p, detail::unit_point(t)); };
  if (dist >= kSplit) {
    const QuadResult r = integrate(kern, 0.0, 1.0 - dist, o.quad);
    return {r.value, r.err_estimate};
  }
  const QuadResult head = integrate(kern, 0.0, 1.0 - kSplit, o.quad);
  // v = 1 - t = e^u; dv integral of 1/(1 - t^p), bounded integrand ~ 1/p
  const auto layer_kern = [p](double u) {
    const double v = std::exp(u);
    return v * detail::tanh_weight(p, detail::unit_point_from_dist(v));
  };
  const QuadResult layer =
      integrate(layer_kern, std::log(dist), std::log(kSplit), o.quad);
  return {head.value + layer.value, head.err_estimate + layer.err_estimate};
}

IntegralValue arctanh_integral(double p, double x, const EvalOptions& o) {
  if (x <= 0.0) return {0.0, 0.0};
  return arctanh_integral_at_dist(p, 1.0 - x, o);
}

// ---------------------------------------------------------------------------
// principal inversions
// ---------------------------------------------------------------------------

struct Inversion {
  double x;
  double abs_err;  // estimated |Delta x|
};

// Invert arcsin_p on the principal branch: y in [0, pi_p/2] for p > 1,
// y in [0, inf) for p <= 1.
Inversion invert_arcsin(double p, double y, const EvalOptions& o) {
  if (y <= 0.0) return {0.0, 0.0};
  const double res_tol = o.residual_rel * std::max(1.0, std::abs(y));
  double hi = 1.0;
  double f_hi;
  if (p > 1.0) {
    const double half = pi_half_closed(p);
    // F_p'(x) -> inf at x = 1; the limit value is exact there.
    if (half - y < 1e-12) return {1.0, 0.0};
    f_hi = half;
  } else {
    hi = 0.5;
    IntegralValue f{0.0, 0.0};
    int k = 1;
    for (; k <= 60; ++k) {
      hi = 1.0 - std::ldexp(1.0, -k);
      f = arcsin_integral(p, hi, o);
      if (f.value >= y) break;
    }
    if (k > 60) return {1.0 - std::ldexp(1.0, -60), res_tol};
    f_hi = f.value;
  }
  double quad_err = 0.0;
  const auto objective = [&](double x) {
    const IntegralValue v = arcsin_integral(p, x, o);
    quad_err = std::max(quad_err, v.err);
    return v.value;
  };
  const detail::RootResult r =
      detail::solve_increasing(objective, 0.0, hi, 0.0, f_hi, y, res_tol, o.bracket_tol);
  // F' = sin weight >= 1, so the y-residual bounds the x error.
  return {r.x, std::abs(r.residual) + quad_err + o.bracket_tol};
}

// Invert an increasing unbounded integral by geometric bracket expansion.
// The returned abs_err is in y units; callers map it through dx/dy.
template <class Integral>
Inversion invert_unbounded(double y, const EvalOptions& o, Integral&& F) {
  if (y <= 0.0) return {0.0, 0.0};
  const double res_tol = o.residual_rel * std::max(1.0, std::abs(y));
  double lo = 0.0, f_lo = 0.0;
  double hi = 1.0;
  double quad_err = 0.0;
  const auto eval = [&](double x) {
    const IntegralValue v = F(x);
    quad_err = std::max(quad_err, v.err);
    return v.value;
  };
  double f_hi = eval(hi);
  while (f_hi < y) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    if (hi > 1.152921504606847e18) {  // 2^60
      throw BracketOverflow("inversion bracket exceeded 2^60");
    }
    f_hi = eval(hi);
  }
  const detail::RootResult r =
      detail::solve_increasing(eval, lo, hi, f_lo, f_hi, y, res_tol, o.bracket_tol);
  return {r.x, (std::abs(r.residual) + quad_err)};
}

// ---------------------------------------------------------------------------
// trig evaluation with range reduction
// ---------------------------------------------------------------------------

struct TrigEval {
  double sin_v;
  double cos_v;
  double sin_err;
  double x;        // principal inverse value |sin| before signs
  double x_err;
  int sin_sign;
  int cos_sign;
};

TrigEval trig_eval(double p, double y, const EvalOptions& o) {
  TrigEval ev{};
  double r = y;
  int sin_sign = 1, cos_sign = 1;
  if (p > 1.0) {
    const double half = pi_half_closed(p);
    const double period = 4.0 * half;  // 2*pi_p
    r = std::fmod(r, period);
    if (r < 0.0) r += period;          // [0, 2*pi_p)
    if (r >= 2.0 * half) {             // oddness: sin(r) = -sin(2*pi_p - r)
      r = period - r;
      sin_sign = -sin_sign;
    }
    // now r in [0, pi_p]
    if (r > half) {
      r = 2.0 * half - r;              // reflection sin_p(y) = sin_p(pi_p - y)
      cos_sign = -1;
    }
  } else if (r < 0.0) {
    r = -r;
    sin_sign = -1;
  }
  const Inversion inv = invert_arcsin(p, r, o);
  ev.x = inv.x;
  ev.x_err = inv.abs_err;
  ev.sin_sign = sin_sign;
  ev.cos_sign = cos_sign;
  ev.sin_v = sin_sign * inv.x;
  ev.sin_err = inv.abs_err;
  if (inv.x >= 1.0) {
    ev.cos_v = 0.0;
  } else {
    const double c = detail::sin_recip_weight(p, detail::unit_point(inv.x));  // (1-x^p)^(1/p)
    ev.cos_v = cos_sign * c;
  }
  return ev;
}

double cos_slope(double p, double x, double cos_v) {
  // |d cos / dx| = x^(p-1) * cos^(1-p)
  if (x <= 0.0) return 0.0;
  if (cos_v <= 0.0) return kInf;
  return std::exp((p - 1.0) * (std::log(x) - std::log(cos_v)));
}

struct HyperbolicEval {
  double sinh_v;
  double cosh_v;
  double x_err;
};

HyperbolicEval hyp_eval(double p, double y, const EvalOptions& o) {
  const double ya = std::abs(y);
  const Inversion inv = invert_unbounded(
      ya, o, [&](double x) { return arcsinh_integral(p, x, o); });
  HyperbolicEval ev{};
  const double s = inv.x;
  // residual maps through dx/dy = (1+x^p)^(1/p) = cosh
  const double ch = s > 0.0 ? detail::sinh_recip_weight(p, s) : 1.0;
  ev.sinh_v = (y < 0.0 ? -s : s);
  ev.cosh_v = ch;
  ev.x_err = inv.abs_err * ch;
  return ev;
}

}  // namespace

// ---------------------------------------------------------------------------
// public surface
// ---------------------------------------------------------------------------

Parameter::Parameter(double p) : p_(p) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw DomainError("Parameter: p must be positive and finite");
  }
}

bool HalfPeriod::is_finite() const { return std::isfinite(value); }

std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::Sin: return "sin";
    case FunctionKind::Cos: return "cos";
    case FunctionKind::Tan: return "tan";
    case FunctionKind::Sinh: return "sinh";
    case FunctionKind::Cosh: return "cosh";
    case FunctionKind::Tanh: return "tanh";
  }
  return "?";
}

std::optional<FunctionKind> kind_from_string(std::string_view name) {
  if (name == "sin") return FunctionKind::Sin;
  if (name == "cos") return FunctionKind::Cos;
  if (name == "tan") return FunctionKind::Tan;
  if (name == "sinh") return FunctionKind::Sinh;
  if (name == "cosh") return FunctionKind::Cosh;
  if (name == "tanh") return FunctionKind::Tanh;
  return std::nullopt;
}

EvalOptions oracle_options() {
  EvalOptions o;
  o.quad = {1e-14, 1e-16, 14};
  o.residual_rel = 1e-14;
  o.bracket_tol = 5e-16;
  return o;
}

HalfPeriod pi_p(Parameter p) {
  if (p.sub_critical()) return {kInf};
  return {2.0 * pi_half_closed(p.value())};
}

double pi_p_quadrature(Parameter p, const QuadratureConfig& cfg) {
  if (p.sub_critical()) {
    throw DivergentEndpoint("pi_p_quadrature: integral diverges for p <= 1");
  }
  const double pv = p.value();
  const auto kern = [pv](double t) {
    return detail::sin_weight(pv, detail::unit_point(t));
  };
  return 2.0 * integrate_singular_upper(kern, 0.0, 1.0, 1.0 / pv, cfg).value;
}

double arcsin_p(Parameter p, double x, const EvalOptions& opts) {
  require_finite_arg(x, "arcsin_p");
  if (x < 0.0 || x > 1.0) throw DomainError("arcsin_p: x must lie in [0,1]");
  if (x == 1.0 && p.sub_critical()) {
    throw DivergentEndpoint("arcsin_p: integral diverges at x = 1 for p <= 1");
  }
  return arcsin_integral(p.value(), x, opts).value;
}

double arccos_p(Parameter p, double x, const EvalOptions& opts) {
  require_finite_arg(x, "arccos_p");
  if (x < 0.0 || x > 1.0) throw DomainError("arccos_p: x must lie in [0,1]");
  if (x == 0.0 && p.sub_critical()) {
    throw DivergentEndpoint("arccos_p: integral diverges at x = 0 for p <= 1");
  }
  if (x == 1.0) return 0.0;
  if (x == 0.0) return pi_half_closed(p.value());
  const double pv = p.value();
  // (1 - x^p)^(1/p), the substitution that maps arccos to arcsin
  const double w = pv * std::log(x);
  const double s = std::exp(std::log(-std::expm1(w)) / pv);
  return arcsin_p(p, std::min(s, 1.0), opts);
}

double arccos_p_integral(Parameter p, double x, const EvalOptions& opts) {
  require_finite_arg(x, "arccos_p_integral");
  if (x < 0.0 || x > 1.0) throw DomainError("arccos_p_integral: x must lie in [0,1]");
  if (x == 0.0 && p.sub_critical()) {
    throw DivergentEndpoint("arccos_p_integral: diverges at x = 0 for p <= 1");
  }
  if (x == 1.0) return 0.0;
  const double pv = p.value();
  const auto kern = [pv](double s) {
    const detail::UnitPow u = detail::unit_pow(pv, detail::unit_point(s));
    return std::exp((pv - 2.0) * u.log_t + (1.0 / pv - 1.0) * u.log_omtp);
  };
  if (pv > 1.0) {
    return integrate_singular_upper(kern, x, 1.0, 1.0 - 1.0 / pv, opts.quad).value;
  }
  return integrate(kern, x, 1.0, opts.quad).value;
}

double arctan_p(Parameter p, double x, const EvalOptions& opts) {
  require_finite_arg(x, "arctan_p");
  if (x < 0.0) throw DomainError("arctan_p: x must be >= 0");
  return arctan_integral(p.value(), x, opts).value;
}

double arcsinh_p(Parameter p, double x, const EvalOptions& opts) {
  require_finite_arg(x, "arcsinh_p");
  if (x < 0.0) throw DomainError("arcsinh_p: x must be >= 0");
  return arcsinh_integral(p.value(), x, opts).value;
}

double arctanh_p(Parameter p, double x, const EvalOptions& opts) {
  require_finite_arg(x, "arctanh_p");
  if (x < 0.0 || x >= 1.0) throw DomainError("arctanh_p: x must lie in [0,1)");
  return arctanh_integral(p.value(), x, opts).value;
}

double sin_p(Parameter p, double y, const EvalOptions& opts) {
  require_finite_arg(y, "sin_p");
  return trig_eval(p.value(), y, opts).sin_v;
}

double cos_p(Parameter p, double y, const EvalOptions& opts) {
  require_finite_arg(y, "cos_p");
  return trig_eval(p.value(), y, opts).cos_v;
}

double tan_p(Parameter p, double y, const EvalOptions& opts) {
  require_finite_arg(y, "tan_p");
  const TrigEval ev = trig_eval(p.value(), y, opts);
  if (ev.cos_v == 0.0) {
    throw PoleError("tan_p: y is an odd multiple of pi_p/2");
  }
  return ev.sin_v / ev.cos_v;
}

double sinh_p(Parameter p, double y, const EvalOptions& opts) {
  require_finite_arg(y, "sinh_p");
  return hyp_eval(p.value(), y, opts).sinh_v;
}

double cosh_p(Parameter p, double y, const EvalOptions& opts) {
  require_finite_arg(y, "cosh_p");
  return hyp_eval(p.value(), y, opts).cosh_v;
}

double tanh_p(Parameter p, double y, const EvalOptions& opts) {
  require_finite_arg(y, "tanh_p");
  const HyperbolicEval ev = hyp_eval(p.value(), y, opts);
  return ev.sinh_v / ev.cosh_v;
}

ForwardEval forward_eval(FunctionKind kind, Parameter p, double y,
                         const EvalOptions& opts) {
  require_finite_arg(y, "forward_eval");
  const double pv = p.value();
  switch (kind) {
    case FunctionKind::Sin: {
      const TrigEval ev = trig_eval(pv, y, opts);
      return {ev.sin_v, ev.x_err};
    }
    case FunctionKind::Cos: {
      const TrigEval ev = trig_eval(pv, y, opts);
      const double slope = cos_slope(pv, ev.x, std::abs(ev.cos_v));
      double err = std::isfinite(slope) ? ev.x_err * slope
                                        : std::pow(pv * ev.x_err, 1.0 / pv);
      return {ev.cos_v, err};
    }
    case FunctionKind::Tan: {
      const TrigEval ev = trig_eval(pv, y, opts);
      if (ev.cos_v == 0.0) throw PoleError("forward_eval: tan pole");
      const double c = std::abs(ev.cos_v);
      const double slope = cos_slope(pv, ev.x, c);
      const double err = ev.x_err / c + ev.x * ev.x_err * slope / (c * c);
      return {ev.sin_v / ev.cos_v, err};
    }
    case FunctionKind::Sinh: {
      const HyperbolicEval ev = hyp_eval(pv, y, opts);
      return {ev.sinh_v, ev.x_err};
    }
    case FunctionKind::Cosh: {
      const HyperbolicEval ev = hyp_eval(pv, y, opts);
      const double s = std::abs(ev.sinh_v);
      double slope = 0.0;
      if (s > 0.0) slope = std::exp((pv - 1.0) * (std::log(s) - std::log(ev.cosh_v)));
      return {ev.cosh_v, ev.x_err * slope};
    }
    case FunctionKind::Tanh: {
      const HyperbolicEval ev = hyp_eval(pv, y, opts);
      const double s = std::abs(ev.sinh_v);
      const double ch = ev.cosh_v;
      double slope_ch = 0.0;
      if (s > 0.0) slope_ch = std::exp((pv - 1.0) * (std::log(s) - std::log(ch)));
      const double err = ev.x_err / ch + s * ev.x_err * slope_ch / (ch * ch);
      return {ev.sinh_v / ev.cosh_v, err};
    }
  }
  throw std::logic_error("forward_eval: bad kind");
}

double tanh_p_distance(Parameter p, double y, const EvalOptions& opts) {
  require_finite_arg(y, "tanh_p_distance");
  if (y < 0.0) throw DomainError("tanh_p_distance: y must be >= 0");
  if (y == 0.0) return 1.0;
  const double pv = p.value();
  const double res_tol = opts.residual_rel * std::max(1.0, y);
  // Solve arctanh_p(1 - e^-w) = y for w >= 0; increasing in w.
  const auto f = [&](double w) {
    return arctanh_integral_at_dist(pv, std::exp(-w), opts).value;
  };
  double lo = 0.0, f_lo = 0.0;
  double hi = 4.0;
  double f_hi = f(hi);
  while (f_hi < y) {
    lo = hi;
    f_lo = f_hi;
    hi *= 2.0;
    if (hi > 700.0) {
      throw BoundaryProximity("tanh_p_distance: distance underflows double range");
    }
    f_hi = f(hi);
  }
  const detail::RootResult r =
      detail::solve_increasing(f, lo, hi, f_lo, f_hi, y, res_tol, 1e-14);
  return std::exp(-r.x);
}

}  // namespace gentrig
