// SPDX-License-Identifier: Apache-2.0
//
// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Grids and tolerances are pinned here; budgets are wall-clock.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "gentrig/convexity.hpp"
#include "gentrig/report_io.hpp"

namespace {

using namespace gentrig;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

struct Criterion {
  std::string label;
  std::function<bool(std::string&)> body;
  double budget_seconds;
};

void run_criterion(int index, const Criterion& c) {
  const auto t0 = Clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = c.body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (secs > c.budget_seconds) {
    ok = false;
    detail += " [over budget " + std::to_string(c.budget_seconds) + "s]";
  }
  std::printf("[%s] criterion %d: %s (%s%.1f s)\n", ok ? "PASS" : "FAIL", index,
              c.label.c_str(), detail.empty() ? "" : (detail + ", ").c_str(), secs);
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

int scan_threads() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 2;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

// ---------------------------------------------------------------------------

bool classical_reduction(std::string& detail) {
  const Parameter p2(2.0);
  // tight evaluation: d tan/dy ~ 200 near the top of the tan grid would
  // amplify the default 1e-12 inversion residual past the 1e-10 gate
  const EvalOptions opts = oracle_options();
  double worst = 0.0;
  const auto track = [&](double got, double want) {
    worst = std::max(worst, std::abs(got - want));
  };
  const double half = pi_p(p2).value / 2.0;
  for (int i = 0; i < 100; ++i) {
    const double yt = half * i / 99.0;
    track(sin_p(p2, yt, opts), std::sin(yt));
    track(cos_p(p2, yt, opts), std::cos(yt));
    const double ytan = 1.5 * i / 99.0;
    track(tan_p(p2, ytan, opts), std::tan(ytan));
    const double yh = 5.0 * i / 99.0;
    track(sinh_p(p2, yh, opts), std::sinh(yh));
    track(cosh_p(p2, yh, opts), std::cosh(yh));
    track(tanh_p(p2, yh, opts), std::tanh(yh));
  }
  detail = "max err " + fmt(worst);
  return worst <= 1e-10;
}

bool identities(std::string& detail) {
  double worst = 0.0;
  const auto pg = geometric_grid(0.25, 16.0, 16);
  for (double p : pg) {
    const Parameter pp(p);
    const double cap =
        pi_p(pp).is_finite() ? pi_p(pp).value / 2.0 : 5.0;
    for (int j = 1; j <= 20; ++j) {
      const double yt = std::min(cap, 5.0) * j / 21.0;
      const double s = std::abs(sin_p(pp, yt));
      const double c = std::abs(cos_p(pp, yt));
      worst = std::max(worst, std::abs(std::pow(s, p) + std::pow(c, p) - 1.0));
      // cosh^p - |sinh|^p - 1 in the cancellation-free form
      // cosh^p (1 - tanh^p) - 1: the direct power difference overflows the
      // representable defect for large p*y
      const double yh = 5.0 * j / 20.0;
      const double ch = cosh_p(pp, yh);
      const double v = tanh_p_distance(pp, yh);
      const double defect =
          std::exp(p * std::log(ch)) * -std::expm1(p * std::log1p(-v)) - 1.0;
      worst = std::max(worst, std::abs(defect));
    }
  }
  detail = "max identity defect " + fmt(worst);
  return worst <= 1e-9;
}

bool pi_p_closed_form(std::string& detail) {
  const auto pg = geometric_grid(1.05, 50.0, 20);
  double worst = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  bool monotone = true;
  for (double p : pg) {
    const double closed = pi_p(Parameter(p)).value;
    const double quad = pi_p_quadrature(Parameter(p));
    worst = std::max(worst, std::abs(closed - quad));
    if (!(closed < prev)) monotone = false;
    prev = closed;
  }
  detail = "max |closed-quad| " + fmt(worst) + (monotone ? ", monotone" : ", NOT monotone");
  return worst <= 1e-10 && monotone;
}

bool derivative_cross_check(std::string& detail) {
  const EvalOptions oracle = oracle_options();
  const auto pg = geometric_grid(0.5, 12.0, 8);
  int checked = 0;
  double worst_rel1 = 0.0, worst_rel2 = 0.0, worst_combo = 0.0;
  for (FunctionKind fam : {FunctionKind::Sin, FunctionKind::Tan,
                           FunctionKind::Sinh, FunctionKind::Tanh}) {
    const KernelBundle bundle = make_bundle(fam);
    for (double p : pg) {
      const Parameter pp(p);
      double cap = 2.5;
      if (fam == FunctionKind::Sin || fam == FunctionKind::Tan) {
        cap = pi_p(pp).is_finite() ? 0.85 * pi_p(pp).value / 2.0 : 2.5;
        cap = std::min(cap, 2.5);
      }
      for (int j = 1; j <= 8; ++j) {
        const double y = cap * j / 9.0;
        const double scale = std::max(1.0, y);
        const double dg = inverse_dp(bundle, pp, y);
        const double d2g = inverse_d2p(bundle, pp, y);
        const double d2logg = inverse_d2p_log(bundle, pp, y);

        const double f1 = (forward_eval(fam, Parameter(p + 1e-4), y, oracle).value -
                           forward_eval(fam, Parameter(p - 1e-4), y, oracle).value) /
                          2e-4;
        const double g0 = forward_eval(fam, pp, y, oracle).value;
        const double f2 = (forward_eval(fam, Parameter(p + 1e-3), y, oracle).value -
                           2.0 * g0 +
                           forward_eval(fam, Parameter(p - 1e-3), y, oracle).value) /
                          1e-6;
        const double rel1 =
            std::abs(dg - f1) /
            std::max({std::abs(dg), std::abs(f1), 5e-4 * scale});
        const double rel2 =
            std::abs(d2g - f2) /
            std::max({std::abs(d2g), std::abs(f2), 5e-3 * scale});
        const double combo = (d2g * g0 - dg * dg) / (g0 * g0);
        const double cdiff =
            std::abs(d2logg - combo) / std::max(1.0, std::abs(d2logg));
        worst_rel1 = std::max(worst_rel1, rel1);
        worst_rel2 = std::max(worst_rel2, rel2);
        worst_combo = std::max(worst_combo, cdiff);
        ++checked;
      }
    }
  }
  detail = std::to_string(checked) + " pts, rel1 " + fmt(worst_rel1) + ", rel2 " +
           fmt(worst_rel2) + ", combo " + fmt(worst_combo);
  return worst_rel1 <= 1e-5 && worst_rel2 <= 1e-4 && worst_combo <= 1e-9;
}

bool certify(ScanProperty prop, FunctionKind kind, const std::vector<double>& pg,
             const std::vector<double>& yg, std::string& out) {
  ScanConfig cfg;
  cfg.threads = scan_threads();
  const ScanReport r = scan(prop, kind, pg, yg, cfg);
  out += std::string(to_string(kind)) + ":" + std::to_string(r.fails()) + "f/" +
         std::to_string(r.inconclusive()) + "i ";
  return r.fails() == 0 && r.inconclusive() == 0;
}

bool theorem_scans(std::string& detail) {
  bool ok = true;
  const auto pg_all = geometric_grid(0.25, 16.0, 32);
  const auto pg_tan = geometric_grid(1.1, 16.0, 24);
  const auto yg_trig = uniform_grid(0.05, 0.95, 19);
  const auto yg_tan = uniform_grid(0.05, 0.65, 13);
  const auto yg_hyp = uniform_grid(0.1, 5.0, 16);
  ok &= certify(ScanProperty::LogConcave, FunctionKind::Sin, pg_all, yg_trig, detail);
  ok &= certify(ScanProperty::LogConvex, FunctionKind::Tan, pg_tan, yg_tan, detail);
  ok &= certify(ScanProperty::LogConcave, FunctionKind::Cos, pg_tan, yg_tan, detail);
  ok &= certify(ScanProperty::LogConvex, FunctionKind::Sinh, pg_all, yg_hyp, detail);
  ok &= certify(ScanProperty::Concave, FunctionKind::Tanh, pg_all, yg_hyp, detail);
  ok &= certify(ScanProperty::LogConvex, FunctionKind::Cosh, pg_all, yg_hyp, detail);
  return ok;
}

bool turan_conjecture(std::string& detail) {
  bool ok = true;
  const auto pg = geometric_grid(2.05, 16.0, 10);
  const auto yg_trig = uniform_grid(0.05, 0.95, 10);
  const auto yg_short = uniform_grid(0.05, 0.65, 8);
  const auto yg_hyp = uniform_grid(0.1, 5.0, 10);
  ok &= certify(ScanProperty::TuranSin, FunctionKind::Sin, pg, yg_trig, detail);
  ok &= certify(ScanProperty::TuranCos, FunctionKind::Cos, pg, yg_short, detail);
  ok &= certify(ScanProperty::TuranTan, FunctionKind::Tan, pg, yg_short, detail);
  ok &= certify(ScanProperty::TuranSinh, FunctionKind::Sinh, pg, yg_hyp, detail);
  ok &= certify(ScanProperty::TuranTanh, FunctionKind::Tanh, pg, yg_hyp, detail);
  // the sine inequality follows from log-concavity down to p - 1 > 0
  ok &= certify(ScanProperty::TuranSin, FunctionKind::Sin,
                geometric_grid(1.05, 2.0, 5), uniform_grid(0.1, 0.9, 5), detail);
  // exploratory beyond the certified tan/cos band: reported, not asserted
  ScanConfig cfg;
  cfg.threads = scan_threads();
  const ScanReport exc = scan(ScanProperty::TuranCos, FunctionKind::Cos, pg,
                              uniform_grid(0.7, 0.95, 4), cfg);
  const ScanReport ext = scan(ScanProperty::TuranTan, FunctionKind::Tan, pg,
                              uniform_grid(0.7, 0.95, 4), cfg);
  detail += "cos-exploratory:" + std::to_string(exc.fails()) + "f tan-exploratory:" +
            std::to_string(ext.fails()) + "f ";
  return ok;
}

bool lemma3_criterion(std::string& detail) {
  bool ok = true;
  for (double p : geometric_grid(1.1, 10.0, 10)) {
    for (double s : uniform_grid(0.05, 0.95, 10)) {
      const Lemma3Sides sides = lemma3_check(Parameter(p), s);
      if (!(sides.lhs < sides.rhs)) {
        ok = false;
        detail += "violated at p=" + fmt(p) + " s=" + fmt(s) + " ";
      }
    }
  }
  const Lemma3Constant c = lemma3_constant();
  const double cdiff = std::abs(c.quadrature - c.closed_form);
  if (!(cdiff <= 1e-9) || !(c.closed_form > 0.0)) ok = false;
  double worst_rel = 0.0;
  for (double p : geometric_grid(1.1, 20.0, 20)) {
    const QuadResult q = integrate(
        [p](double u) {
          if (u <= 0.0) return 0.0;
          const double l = std::log(u);
          return std::pow(u, 1.0 / p) * l * l;
        },
        0.0, 1.0);
    const double closed = 2.0 * p * p * p / std::pow(1.0 + p, 3.0);
    worst_rel = std::max(worst_rel, std::abs(q.value / closed - 1.0));
  }
  if (worst_rel > 1e-10) ok = false;
  detail += "constant diff " + fmt(cdiff) + ", exact-integral rel " + fmt(worst_rel);
  return ok;
}

bool proof_quantities(std::string& detail) {
  bool ok = true;
  int bad_g = 0, bad_d = 0, bad_r = 0;
  for (double p : geometric_grid(0.25, 8.0, 10)) {
    for (double x : uniform_grid(0.05, 0.95, 10)) {
      if (!(theorem1_G(Parameter(p), x) < 0.0)) ++bad_g;
      const Theorem5Ratios r = theorem5_ratio_check(Parameter(p), x);
      if (!(r.ratio > r.bound1 && r.bound1 > r.bound2)) ++bad_r;
    }
  }
  for (double p : geometric_grid(1.0, 8.0, 8)) {
    for (double x : uniform_grid(0.05, 5.0, 10)) {
      if (!(theorem4_discriminant(Parameter(p), x) < 0.0)) ++bad_d;
    }
  }
  ok = bad_g == 0 && bad_d == 0 && bad_r == 0;
  detail = "G viol " + std::to_string(bad_g) + ", D/4 viol " + std::to_string(bad_d) +
           ", ratio viol " + std::to_string(bad_r);
  return ok;
}

bool negative_control(std::string& detail) {
  ScanConfig cfg;
  cfg.threads = scan_threads();
  const ScanReport r = scan(ScanProperty::LogConvex, FunctionKind::Tan,
                            uniform_grid(0.1, 0.9, 8), uniform_grid(0.05, 0.65, 8),
                            cfg);
  detail = std::to_string(r.fails()) + " failing cells found";
  return r.fails() >= 1;
}

bool find_p0_criterion(std::string& detail) {
  const auto yg = uniform_grid(0.2, 0.8, 5);
  const P0Result res = find_p0(yg, 0.05, 1.0, 1e-4);
  int thresholds = 0, nochange = 0;
  for (const auto& e : res.entries) {
    if (e.sign_change) {
      ++thresholds;
    } else {
      ++nochange;
    }
  }
  detail = std::to_string(thresholds) + " thresholds, " + std::to_string(nochange) +
           " no-sign-change";
  if (res.any_change) {
    detail += ", p0 est " + fmt(res.p0_estimate);
    const double p_conf = std::min(res.p0_estimate + 0.05, 1.0);
    for (double y : yg) {
      for (double p : uniform_grid(p_conf, 1.0, 5)) {
        const DerivativeReport r =
            derivative_report(FunctionKind::Sin, Parameter(p), y);
        if (!(r.d2g_dp2 < 0.0)) {
          detail += " confirmation failed at p=" + fmt(p) + " y=" + fmt(y);
          return false;
        }
      }
    }
  }
  return static_cast<int>(res.entries.size()) == 5;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"classical reduction at p=2 (1e-10)", classical_reduction, 10.0},
      {"pythagorean and hyperbolic identities (1e-9)", identities, 30.0},
      {"pi_p quadrature vs closed form (1e-10), monotone", pi_p_closed_form, 60.0},
      {"parameter-derivative cross-checks, four families", derivative_cross_check, 180.0},
      {"theorem certification scans T1-T6", theorem_scans, 600.0},
      {"Turan inequalities, five kinds", turan_conjecture, 300.0},
      {"key estimate grid, proof constant, exact integral", lemma3_criterion, 60.0},
      {"proof quantities: G, discriminant, ratio chain", proof_quantities, 120.0},
      {"negative control: sub-critical tan scan fails somewhere", negative_control,
       60.0},
      {"concavity threshold search and confirmation", find_p0_criterion, 300.0},
  };
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    run_criterion(static_cast<int>(i + 1), criteria[i]);
  }
  if (g_failures > 0) {
    std::printf("%d criterion(s) FAILED\n", g_failures);
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
