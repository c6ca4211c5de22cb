// SPDX-License-Identifier: Apache-2.0
#include "gentrig/convexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "gentrig/detail/kernels.hpp"

namespace gentrig {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

using detail::unit_point;
using detail::UnitPoint;

struct IntegralValue {
  double value;
  double err;
};

IntegralValue bundle_integral(const KernelBundle& b, double p, double x, bool second,
                              const QuadratureConfig& cfg) {
  if (x <= 0.0) return {0.0, 0.0};
  const auto kern = [&](double t) {
    return second ? b.f_pp_integrand(p, t) : b.f_p_integrand(p, t);
  };
  const QuadResult r = integrate(kern, 0.0, x, cfg);
  return {r.value, r.err_estimate};
}

void require_unit_interior(double x, const char* what) {
  if (!(x > 0.0) || !(x < 1.0)) {
    throw DomainError(std::string(what) + ": x must lie in (0,1)");
  }
  if (1.0 - x < 1e-8) {
    throw BoundaryProximity(std::string(what) + ": x within 1e-8 of 1");
  }
}

}  // namespace

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

std::optional<Verdict> verdict_from_string(std::string_view name) {
  if (name == "holds") return Verdict::Holds;
  if (name == "fails") return Verdict::Fails;
  if (name == "inconclusive") return Verdict::Inconclusive;
  return std::nullopt;
}

Margin make_margin(double value, double err_bound) {
  Verdict v = Verdict::Inconclusive;
  if (value > err_bound) {
    v = Verdict::Holds;
  } else if (value < -err_bound) {
    v = Verdict::Fails;
  }
  return {value, err_bound, v};
}

std::string_view to_string(ScanProperty property) {
  switch (property) {
    case ScanProperty::TuranSin: return "turan-sin";
    case ScanProperty::TuranCos: return "turan-cos";
    case ScanProperty::TuranTan: return "turan-tan";
    case ScanProperty::TuranSinh: return "turan-sinh";
    case ScanProperty::TuranTanh: return "turan-tanh";
    case ScanProperty::LogConcave: return "log-concave";
    case ScanProperty::LogConvex: return "log-convex";
    case ScanProperty::Concave: return "concave";
  }
  return "?";
}

std::optional<ScanProperty> property_from_string(std::string_view name) {
  if (name == "turan-sin") return ScanProperty::TuranSin;
  if (name == "turan-cos") return ScanProperty::TuranCos;
  if (name == "turan-tan") return ScanProperty::TuranTan;
  if (name == "turan-sinh") return ScanProperty::TuranSinh;
  if (name == "turan-tanh") return ScanProperty::TuranTanh;
  if (name == "log-concave") return ScanProperty::LogConcave;
  if (name == "log-convex") return ScanProperty::LogConvex;
  if (name == "concave") return ScanProperty::Concave;
  return std::nullopt;
}

std::optional<FunctionKind> turan_kind(ScanProperty property) {
  switch (property) {
    case ScanProperty::TuranSin: return FunctionKind::Sin;
    case ScanProperty::TuranCos: return FunctionKind::Cos;
    case ScanProperty::TuranTan: return FunctionKind::Tan;
    case ScanProperty::TuranSinh: return FunctionKind::Sinh;
    case ScanProperty::TuranTanh: return FunctionKind::Tanh;
    default: return std::nullopt;
  }
}

std::string_view to_string(ScanMode mode) {
  return mode == ScanMode::Analytic ? "analytic" : "finite-diff";
}

std::size_t ScanReport::fails() const {
  return std::count_if(margins.begin(), margins.end(),
                       [](const Margin& m) { return m.verdict == Verdict::Fails; });
}

std::size_t ScanReport::inconclusive() const {
  return std::count_if(margins.begin(), margins.end(), [](const Margin& m) {
    return m.verdict == Verdict::Inconclusive;
  });
}

Margin turan_margin(FunctionKind kind, Parameter p, double y,
                    const EvalOptions& opts) {
  const double pv = p.value();
  if (!(pv > 1.0)) throw DomainError("turan_margin: requires p - 1 > 0");
  const bool trig = kind == FunctionKind::Sin || kind == FunctionKind::Cos ||
                    kind == FunctionKind::Tan;
  if (trig) {
    if (!(y > 0.0) || !(y < 1.0)) {
      throw DomainError("turan_margin: trig kinds need y in (0,1)");
    }
  } else if (!(y > 0.0)) {
    throw DomainError("turan_margin: hyperbolic kinds need y > 0");
  }

  const Parameter pm(pv - 1.0), pc(pv), pp(pv + 1.0);
  if (kind == FunctionKind::Tanh) {
    const ForwardEval probe = forward_eval(kind, pc, y, opts);
    if (1.0 - probe.value < 1e-3) {
      // saturated regime: margins live below double resolution of the values
      const double da = tanh_p_distance(pm, y, opts);
      const double db = tanh_p_distance(pc, y, opts);
      const double dc = tanh_p_distance(pp, y, opts);
      const double value = (da + dc - 2.0 * db) + (db * db - da * dc);
      const double rel = opts.residual_rel * std::max(1.0, y);
      const double err =
          2.0 * ((pv - 1.0) * da + 2.0 * pv * db + (pv + 1.0) * dc) * rel;
      return make_margin(value, err);
    }
  }
  double sign = 1.0;
  switch (kind) {
    case FunctionKind::Sin:
    case FunctionKind::Cos:
    case FunctionKind::Tanh:
      break;
    case FunctionKind::Tan:
    case FunctionKind::Sinh:
      sign = -1.0;
      break;
    default:
      throw DomainError("turan_margin: cosh has no conjectured inequality");
  }
  const ForwardEval a = forward_eval(kind, pm, y, opts);
  const ForwardEval b = forward_eval(kind, pc, y, opts);
  const ForwardEval c = forward_eval(kind, pp, y, opts);
  const double value = sign * (b.value * b.value - a.value * c.value);
  const double err = 2.0 * std::abs(b.value) * b.abs_err +
                     std::abs(a.value) * c.abs_err + std::abs(c.value) * a.abs_err;
  const double round_floor =
      1024.0 * std::numeric_limits<double>::epsilon() *
      std::max(b.value * b.value, std::abs(a.value * c.value));
  if (std::abs(value) > round_floor && std::abs(value) > err) {
    return make_margin(value, err);
  }

  // The direct product difference sits at the binary64 rounding floor (large
  // p with small y: the three values agree to ~16 digits).  Rebuild the slack
  // from the increments delta_m = g(p) - g(p-1) and delta_p = g(p+1) - g(p),
  // integrated from dg/dq; these keep relative accuracy where the products
  // cancel, and b^2 - ac == b (delta_m - delta_p) + delta_m delta_p exactly.
  const QuadratureConfig qcfg{1e-8, 1e-290, 8};
  const auto dgdq = [&](double q) {
    return derivative_report(kind, Parameter(q), y, opts).dg_dp;
  };
  const QuadResult dm = integrate(dgdq, pv - 1.0, pv, qcfg);
  const QuadResult dp = integrate(dgdq, pv, pv + 1.0, qcfg);
  const double delta_m = dm.value;
  const double delta_p = dp.value;
  const double rebuilt =
      sign * (b.value * (delta_m - delta_p) + delta_m * delta_p);
  const double e_dm = dm.err_estimate + 1e-9 * std::abs(delta_m);
  const double e_dp = dp.err_estimate + 1e-9 * std::abs(delta_p);
  const double rebuilt_err = (std::abs(b.value) + std::abs(delta_p)) * e_dm +
                             (std::abs(b.value) + std::abs(delta_m)) * e_dp +
                             std::abs(delta_m - delta_p) * b.abs_err;
  return make_margin(rebuilt, rebuilt_err);
}

double corollary_condition(FunctionKind family, CorollaryVariant variant,
                           Parameter p, double x, const EvalOptions& opts) {
  const double pv = p.value();
  const bool unit = family == FunctionKind::Sin || family == FunctionKind::Tanh;
  if (unit) {
    require_unit_interior(x, "corollary_condition");
  } else if (!(x > 0.0)) {
    throw DomainError("corollary_condition: x must be > 0");
  }
  if ((family == FunctionKind::Sinh && variant == CorollaryVariant::PlainConvexity) ||
      (family == FunctionKind::Tanh && variant == CorollaryVariant::LogConvexity) ||
      family == FunctionKind::Cos || family == FunctionKind::Cosh) {
    throw UnsupportedFamily("corollary_condition: no printed condition for this combination");
  }

  const KernelBundle b = make_bundle(family);
  const double i1 = bundle_integral(b, pv, x, false, opts.quad).value;
  const double i2 = bundle_integral(b, pv, x, true, opts.quad).value;
  const UnitPoint pt = unit_point(x);

  switch (family) {
    case FunctionKind::Sin: {
      const detail::UnitPow u = detail::unit_pow(pv, pt);
      const double phi_pm1 = std::exp(-((pv - 1.0) / pv) * u.log_omtp);
      const double eta = detail::sin_ratio_dp(pv, pt);
      const double lead = (variant == CorollaryVariant::LogConvexity)
                              ? phi_pm1 / x
                              : (u.tp / x) * phi_pm1;
      return lead * i1 * i1 - 2.0 * eta * i1 + i2;
    }
    case FunctionKind::Tan: {
      const double lt = std::log(x);
      const double w = pv * lt;
      const double mid = 2.0 * lt * std::exp(w - detail::log1p_exp(w));
      const double xpm1 = std::exp((pv - 1.0) * lt);
      const double lead = (variant == CorollaryVariant::LogConvexity)
                              ? 1.0 / x - (pv - 1.0) * xpm1
                              : pv * xpm1;
      return lead * i1 * i1 + mid * i1 + i2;
    }
    case FunctionKind::Sinh: {
      const double theta = detail::tan_weight(pv, x);  // 1/(1+x^p)
      const double lam = detail::sinh_weight(pv, x);
      const double dlam = detail::sinh_weight_dp(pv, x);
      return theta * i1 * i1 - 2.0 * x * dlam * i1 + x * lam * i2;
    }
    default: {  // Tanh, plain concavity
      const double lead = detail::tanh_ratio_dx(pv, pt);  // p x^(p-1)/(1-x^p)
      const double mid = 2.0 * detail::tanh_weight_dp(pv, pt);
      const double alpha = detail::tanh_weight(pv, pt);
      return lead * i1 * i1 - mid * i1 + alpha * i2;
    }
  }
}

Lemma3Sides lemma3_check(Parameter p, double s, const QuadratureConfig& cfg) {
  const double pv = p.value();
  if (!(pv > 1.0)) throw DomainError("lemma3_check: requires p > 1");
  if (!(s > 0.0) || !(s < 1.0)) throw DomainError("lemma3_check: s must lie in (0,1)");
  const double ls = std::log(s);
  const double pp1 = pv + 1.0;
  const double lhs =
      s * pv * pv * pv / (pp1 * pp1) * (1.0 / (pp1 * pp1) - ls * ls / (pv * pv));
  const auto kern = [pv, s](double u) {
    if (u <= 0.0) return 0.0;
    const double su = s * u;
    const double l = std::log(su);
    const double opsu = 1.0 + su;
    return std::pow(u, 1.0 / pv) * (1.0 - su) / (opsu * opsu * opsu) * l * l;
  };
  const QuadResult r = integrate(kern, 0.0, 1.0, cfg);
  return {lhs, r.value, r.err_estimate};
}

double zeta3() {
  // direct series, backward summation; tail < 1/(2N^2) <= 1.25e-13
  constexpr long long n_terms = 2000000;
  double sum = 0.0;
  for (long long n = n_terms; n >= 1; --n) {
    const double dn = static_cast<double>(n);
    sum += 1.0 / (dn * dn * dn);
  }
  // Euler-Maclaurin head of the tail: 1/(2N^2) - 1/(2N^3)
  const double tn = static_cast<double>(n_terms);
  sum += 0.5 / (tn * tn) - 0.5 / (tn * tn * tn);
  return sum;
}

Lemma3Constant lemma3_constant(const QuadratureConfig& cfg) {
  const auto kern = [](double u) {
    if (u <= 0.0) return 0.0;
    const double l = std::log(u);
    const double opu = 1.0 + u;
    return u * l * l * ((1.0 - u) / (opu * opu * opu) - 0.25);
  };
  const QuadResult r = integrate(kern, 0.0, 1.0, cfg);
  const double closed =
      kPi * kPi / 3.0 - std::log(4.0) - 1.5 * zeta3() - 1.0 / 16.0;
  return {r.value, closed, r.err_estimate};
}

double theorem1_G(Parameter p, double x, const EvalOptions& opts) {
  const double pv = p.value();
  require_unit_interior(x, "theorem1_G");
  const UnitPoint pt = unit_point(x);
  const detail::UnitPow u = detail::unit_pow(pv, pt);
  const double eta = detail::sin_ratio_dp(pv, pt);
  // x / phi^(p-1) = x (1-x^p)^((p-1)/p)
  const double inv_phi_pm1 = std::exp(((pv - 1.0) / pv) * u.log_omtp);
  const KernelBundle b = make_bundle(FunctionKind::Sin);
  const double i2 = bundle_integral(b, pv, x, true, opts.quad).value;
  return x * eta * eta * inv_phi_pm1 - i2;
}

double theorem4_discriminant(Parameter p, double x) {
  const double pv = p.value();
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("theorem4_discriminant: x must be > 0");
  }
  const double lt = std::log(x);
  const double wexp = pv * lt;
  const double l1p = detail::log1p_exp(wexp);        // log(1+x^p)
  const double ratio = std::exp(wexp - l1p);         // x^p/(1+x^p), overflow-safe
  const double w = l1p / (pv * pv) - ratio * lt / pv;
  // braces / (1+x^p), each term carrying one 1/(1+x^p) factor so nothing
  // overflows before the final division by x^2 (1+x^p)
  const double braces_over =
      -pv * ratio * w * w -
      (2.0 * w / pv) * (std::exp(-l1p) + pv * ratio - ratio * (pv * lt) * std::exp(-l1p)) -
      ratio * lt * lt * std::exp(-l1p) / pv;
  return braces_over / (x * x * std::exp(l1p));
}

Theorem5Ratios theorem5_ratio_check(Parameter p, double x,
                                    const QuadratureConfig& cfg) {
  const double pv = p.value();
  require_unit_interior(x, "theorem5_ratio_check");
  // u and v are exactly the tanh-family kernel integrals:
  //   u = Int alpha''_pp,  v = -Int alpha'_p
  const KernelBundle b = make_bundle(FunctionKind::Tanh);
  EvalOptions o;
  o.quad = cfg;
  const double u_int = bundle_integral(b, pv, x, true, cfg).value;
  const double v_int = -bundle_integral(b, pv, x, false, cfg).value;
  const UnitPoint pt = unit_point(x);
  const detail::UnitPow up = detail::unit_pow(pv, pt);
  const double log_recip = -up.log_t;  // log(1/x)
  const double bound1 = (up.tp + 1.0) * log_recip / up.omtp;
  const double bound2 = 2.0 * up.tp * log_recip / up.omtp;
  return {u_int / v_int, bound1, bound2};
}

std::vector<double> geometric_grid(double lo, double hi, int n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 1) {
    throw std::invalid_argument("geometric_grid: need 0 < lo < hi, n >= 1");
  }
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double r = std::log(hi / lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo * std::exp(r * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> uniform_grid(double lo, double hi, int n) {
  if (!(hi > lo) || n < 1) {
    throw std::invalid_argument("uniform_grid: need lo < hi, n >= 1");
  }
  std::vector<double> g(static_cast<std::size_t>(n));
  if (n == 1) {
    g[0] = lo;
    return g;
  }
  const double h = (hi - lo) / (n - 1);
  for (int i = 0; i < n; ++i) g[i] = lo + h * i;
  g.back() = hi;
  return g;
}

namespace {

Margin scan_cell(ScanProperty property, FunctionKind kind, double p, double y,
                 const ScanConfig& cfg) {
  try {
    const Parameter param(p);
    if (const auto tk = turan_kind(property)) {
      return turan_margin(*tk, param, y, cfg.eval);
    }
    if (cfg.mode == ScanMode::Analytic) {
      const DerivativeEvaluation ev = evaluate_derivatives(kind, param, y, cfg.eval);
      switch (property) {
        case ScanProperty::LogConcave:
          return make_margin(-ev.report.d2logg_dp2, ev.err_d2logg);
        case ScanProperty::LogConvex:
          return make_margin(ev.report.d2logg_dp2, ev.err_d2logg);
        default:
          return make_margin(-ev.report.d2g_dp2, ev.err_d2g);
      }
    }
    const double h = cfg.fd_step;
    if (p - h <= 0.0) return {kNan, kInf, Verdict::Inconclusive};
    const ForwardEval f0 = forward_eval(kind, param, y, cfg.eval);
    const ForwardEval fm = forward_eval(kind, Parameter(p - h), y, cfg.eval);
    const ForwardEval fp = forward_eval(kind, Parameter(p + h), y, cfg.eval);
    double second, noise;
    if (property == ScanProperty::Concave) {
      second = (fp.value - 2.0 * f0.value + fm.value) / (h * h);
      noise = (fp.abs_err + 2.0 * f0.abs_err + fm.abs_err) / (h * h);
      const double scale = std::max({std::abs(fp.value), std::abs(f0.value), 1.0});
      noise += 8.0 * std::numeric_limits<double>::epsilon() * scale / (h * h);
      return make_margin(-second, noise);
    }
    if (!(f0.value > 0.0) || !(fm.value > 0.0) || !(fp.value > 0.0)) {
      return {kNan, kInf, Verdict::Inconclusive};
    }
    second = (std::log(fp.value) - 2.0 * std::log(f0.value) + std::log(fm.value)) /
             (h * h);
    noise = (fp.abs_err / fp.value + 2.0 * f0.abs_err / f0.value +
             fm.abs_err / fm.value) /
            (h * h);
    const double lscale =
        std::max({std::abs(std::log(f0.value)), std::abs(std::log(fp.value)), 1.0});
    noise += 8.0 * std::numeric_limits<double>::epsilon() * lscale / (h * h);
    return make_margin(property == ScanProperty::LogConcave ? -second : second,
                       noise);
  } catch (const std::exception&) {
    return {kNan, kInf, Verdict::Inconclusive};
  }
}

}  // namespace

ScanReport scan(ScanProperty property, FunctionKind kind,
                std::vector<double> p_grid, std::vector<double> y_grid,
                const ScanConfig& cfg) {
  if (p_grid.empty() || y_grid.empty()) {
    throw std::invalid_argument("scan: grids must be non-empty");
  }
  for (std::size_t i = 1; i < p_grid.size(); ++i) {
    if (!(p_grid[i] > p_grid[i - 1])) {
      throw std::invalid_argument("scan: p_grid must be strictly increasing");
    }
  }
  for (std::size_t i = 1; i < y_grid.size(); ++i) {
    if (!(y_grid[i] > y_grid[i - 1])) {
      throw std::invalid_argument("scan: y_grid must be strictly increasing");
    }
  }
  if (const auto tk = turan_kind(property)) kind = *tk;

  ScanReport report;
  report.kind = kind;
  report.property = property;
  report.p_grid = std::move(p_grid);
  report.y_grid = std::move(y_grid);
  report.config = cfg;
  const std::size_t np = report.p_grid.size();
  const std::size_t ny = report.y_grid.size();
  report.margins.resize(np * ny);

  const std::size_t cells = np * ny;
  const std::size_t n_threads = static_cast<std::size_t>(
      std::clamp<long long>(cfg.threads, 1, static_cast<long long>(cells)));
  const auto worker = [&](std::size_t tid) {
    for (std::size_t idx = tid; idx < cells; idx += n_threads) {
      const std::size_t ip = idx / ny;
      const std::size_t iy = idx % ny;
      report.margins[idx] =
          scan_cell(property, kind, report.p_grid[ip], report.y_grid[iy], cfg);
    }
  };
  if (n_threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  return report;
}

P0Result find_p0(const std::vector<double>& y_grid, double p_lo, double p_hi,
                 double tol, const EvalOptions& opts) {
  if (y_grid.empty()) throw std::invalid_argument("find_p0: empty y grid");
  for (double y : y_grid) {
    if (!(y > 0.0) || !(y < 1.0)) {
      throw DomainError("find_p0: y grid must lie in (0,1)");
    }
  }
  if (!(p_lo > 0.0) || !(p_hi > p_lo) || p_hi > 1.0 || !(tol > 0.0)) {
    throw std::invalid_argument("find_p0: need 0 < p_lo < p_hi <= 1, tol > 0");
  }
  P0Result res;
  res.p0_estimate = kNan;
  res.any_change = false;
  const auto d2 = [&](double p, double y) {
    return derivative_report(FunctionKind::Sin, Parameter(p), y, opts).d2g_dp2;
  };
  for (double y : y_grid) {
    const double v_lo = d2(p_lo, y);
    const double v_hi = d2(p_hi, y);
    if ((v_lo < 0.0) == (v_hi < 0.0)) {
      res.entries.push_back({y, false, kNan});
      continue;
    }
    double lo = p_lo, hi = p_hi;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      const double vm = d2(mid, y);
      if ((vm < 0.0) == (v_lo < 0.0)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double threshold = 0.5 * (lo + hi);
    res.entries.push_back({y, true, threshold});
    res.any_change = true;
    if (std::isnan(res.p0_estimate) || threshold > res.p0_estimate) {
      res.p0_estimate = threshold;
    }
  }
  return res;
}

}  // namespace gentrig
