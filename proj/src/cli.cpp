// SPDX-License-Identifier: Apache-2.0
#include "gentrig/cli.hpp"

#include <cstdlib>
#include <ostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "gentrig/report_io.hpp"

namespace gentrig {
namespace {

struct CliState {
  std::string kind = "sin";
  std::string property;
  std::string mode = "analytic";
  std::string format = "csv";
  std::string output = "-";
  double p = 2.0;
  double y = 1.0;
  double s = 0.5;
  double tol = 1e-12;
  double p_min = 0.25, p_max = 16.0;
  double y_min = 0.05, y_max = 0.95;
  int p_steps = 8, y_steps = 8;
  double p0_tol = 1e-4;
  int threads = 0;  // 0 = hardware concurrency
};

EvalOptions options_for_tol(double tol) {
  EvalOptions o;
  o.quad.rel_tol = tol;
  o.quad.abs_tol = tol * 1e-2;
  o.residual_rel = tol;
  return o;
}

int thread_budget(int requested) {
  int n = requested > 0 ? requested
                        : static_cast<int>(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("GENTRIG_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1 && cap < n) n = cap;
  }
  return n;
}

void emit(const CliState& st, const std::string& content, std::ostream& out) {
  if (st.output == "-") {
    out << content;
  } else {
    write_atomic(st.output, content);
  }
}

FunctionKind parse_kind(const std::string& name) {
  const auto k = kind_from_string(name);
  if (!k) throw CLI::ValidationError("--kind", "unknown function kind: " + name);
  return *k;
}

int exit_status_for(const ScanReport& report) {
  if (report.fails() > 0) return 1;
  if (report.inconclusive() > 0) return 3;
  return 0;
}

std::string margin_row(ScanProperty property, FunctionKind kind, double p, double y,
                       const Margin& m) {
  std::string out = "property,kind,p,y,margin,err_bound,verdict\n";
  out += std::string(to_string(property)) + "," + std::string(to_string(kind)) + "," +
         format_double(p) + "," + format_double(y) + "," + format_double(m.value) +
         "," + format_double(m.err_bound) + "," + std::string(to_string(m.verdict)) +
         "\n";
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"generalized trigonometric/hyperbolic functions and convexity scans"};
  app.require_subcommand(1);
  CliState st;

  const auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--format", st.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--output,-o", st.output, "output path ('-' = stdout)");
    cmd->add_option("--tol", st.tol, "evaluation tolerance")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate one forward function");
  c_eval->add_option("--kind", st.kind)->required();
  c_eval->add_option("--p", st.p)->required();
  c_eval->add_option("--y", st.y)->required();
  add_io(c_eval);

  CLI::App* c_derivs =
      app.add_subcommand("derivs", "parameter derivatives at one (p, y)");
  c_derivs->add_option("--kind", st.kind)->required();
  c_derivs->add_option("--p", st.p)->required();
  c_derivs->add_option("--y", st.y)->required();
  add_io(c_derivs);

  CLI::App* c_scan = app.add_subcommand("scan", "grid scan of one property");
  c_scan->add_option("--property", st.property)->required();
  c_scan->add_option("--kind", st.kind);
  c_scan->add_option("--p-min", st.p_min);
  c_scan->add_option("--p-max", st.p_max);
  c_scan->add_option("--p-steps", st.p_steps)->check(CLI::PositiveNumber);
  c_scan->add_option("--y-min", st.y_min);
  c_scan->add_option("--y-max", st.y_max);
  c_scan->add_option("--y-steps", st.y_steps)->check(CLI::PositiveNumber);
  c_scan->add_option("--mode", st.mode)
      ->check(CLI::IsMember({"analytic", "finite-diff"}));
  c_scan->add_option("--threads", st.threads);
  add_io(c_scan);

  CLI::App* c_turan = app.add_subcommand("turan", "one Turan margin");
  c_turan->add_option("--kind", st.kind)->required();
  c_turan->add_option("--p", st.p)->required();
  c_turan->add_option("--y", st.y)->required();
  add_io(c_turan);

  CLI::App* c_lemma3 =
      app.add_subcommand("lemma3", "key-estimate sides and the proof constant");
  c_lemma3->add_option("--p", st.p);
  c_lemma3->add_option("--s", st.s);
  add_io(c_lemma3);

  CLI::App* c_findp0 =
      app.add_subcommand("find-p0", "exploratory concavity-threshold search");
  c_findp0->add_option("--y-min", st.y_min);
  c_findp0->add_option("--y-max", st.y_max);
  c_findp0->add_option("--y-steps", st.y_steps)->check(CLI::PositiveNumber);
  c_findp0->add_option("--p-min", st.p_min);
  c_findp0->add_option("--p-max", st.p_max);
  c_findp0->add_option("--p0-tol", st.p0_tol)->check(CLI::PositiveNumber);
  add_io(c_findp0);

  std::vector<const char*> argv;
  argv.push_back("gentrig");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    const EvalOptions opts = options_for_tol(st.tol);
    if (app.got_subcommand(c_eval)) {
      const FunctionKind kind = parse_kind(st.kind);
      const ForwardEval fe = forward_eval(kind, Parameter(st.p), st.y, opts);
      if (st.format == "json") {
        nlohmann::json j{{"kind", st.kind}, {"p", st.p},         {"y", st.y},
                         {"value", fe.value}, {"err_bound", fe.abs_err}};
        emit(st, j.dump(2) + "\n", out);
      } else {
        emit(st,
             "kind,p,y,value,err_bound\n" + st.kind + "," + format_double(st.p) +
                 "," + format_double(st.y) + "," + format_double(fe.value) + "," +
                 format_double(fe.abs_err) + "\n",
             out);
      }
      return 0;
    }
    if (app.got_subcommand(c_derivs)) {
      const FunctionKind kind = parse_kind(st.kind);
      const DerivativeReport r = derivative_report(kind, Parameter(st.p), st.y, opts);
      if (st.format == "json") {
        nlohmann::json j{{"kind", st.kind},          {"p", st.p},
                         {"y", st.y},                {"g", r.g},
                         {"dg_dp", r.dg_dp},         {"d2g_dp2", r.d2g_dp2},
                         {"d2logg_dp2", r.d2logg_dp2}, {"quad_err", r.quad_err}};
        emit(st, j.dump(2) + "\n", out);
      } else {
        emit(st,
             "kind,p,y,g,dg_dp,d2g_dp2,d2logg_dp2,quad_err\n" + st.kind + "," +
                 format_double(st.p) + "," + format_double(st.y) + "," +
                 format_double(r.g) + "," + format_double(r.dg_dp) + "," +
                 format_double(r.d2g_dp2) + "," + format_double(r.d2logg_dp2) +
                 "," + format_double(r.quad_err) + "\n",
             out);
      }
      return 0;
    }
    if (app.got_subcommand(c_scan)) {
      const auto prop = property_from_string(st.property);
      if (!prop) {
        err << "unknown property: " << st.property << "\n";
        return 2;
      }
      FunctionKind kind = FunctionKind::Sin;
      if (const auto tk = turan_kind(*prop)) {
        kind = *tk;
      } else {
        kind = parse_kind(st.kind);
      }
      ScanConfig cfg;
      cfg.mode = st.mode == "analytic" ? ScanMode::Analytic : ScanMode::FiniteDifference;
      cfg.eval = opts;
      cfg.threads = thread_budget(st.threads);
      const ScanReport report =
          scan(*prop, kind, geometric_grid(st.p_min, st.p_max, st.p_steps),
               uniform_grid(st.y_min, st.y_max, st.y_steps), cfg);
      emit(st, st.format == "json" ? to_json(report) : to_csv(report), out);
      return exit_status_for(report);
    }
    if (app.got_subcommand(c_turan)) {
      const FunctionKind kind = parse_kind(st.kind);
      const Margin m = turan_margin(kind, Parameter(st.p), st.y, opts);
      ScanProperty prop = ScanProperty::TuranSin;
      switch (kind) {
        case FunctionKind::Sin: prop = ScanProperty::TuranSin; break;
        case FunctionKind::Cos: prop = ScanProperty::TuranCos; break;
        case FunctionKind::Tan: prop = ScanProperty::TuranTan; break;
        case FunctionKind::Sinh: prop = ScanProperty::TuranSinh; break;
        case FunctionKind::Tanh: prop = ScanProperty::TuranTanh; break;
        default:
          err << "turan: no conjectured inequality for cosh\n";
          return 2;
      }
      if (st.format == "json") {
        nlohmann::json j{{"property", std::string(to_string(prop))},
                         {"kind", st.kind},
                         {"p", st.p},
                         {"y", st.y},
                         {"margin", m.value},
                         {"err_bound", m.err_bound},
                         {"verdict", std::string(to_string(m.verdict))}};
        emit(st, j.dump(2) + "\n", out);
      } else {
        emit(st, margin_row(prop, kind, st.p, st.y, m), out);
      }
      if (m.verdict == Verdict::Fails) return 1;
      if (m.verdict == Verdict::Inconclusive) return 3;
      return 0;
    }
    if (app.got_subcommand(c_lemma3)) {
      const Lemma3Sides sides = lemma3_check(Parameter(st.p), st.s, opts.quad);
      const Lemma3Constant c = lemma3_constant(opts.quad);
      const bool ok = sides.lhs < sides.rhs &&
                      std::abs(c.quadrature - c.closed_form) <= 1e-9 &&
                      c.closed_form > 0.0;
      if (st.format == "json") {
        nlohmann::json j{{"p", st.p},
                         {"s", st.s},
                         {"lhs", sides.lhs},
                         {"rhs", sides.rhs},
                         {"constant_quadrature", c.quadrature},
                         {"constant_closed_form", c.closed_form},
                         {"holds", ok}};
        emit(st, j.dump(2) + "\n", out);
      } else {
        emit(st,
             "p,s,lhs,rhs,constant_quadrature,constant_closed_form,holds\n" +
                 format_double(st.p) + "," + format_double(st.s) + "," +
                 format_double(sides.lhs) + "," + format_double(sides.rhs) + "," +
                 format_double(c.quadrature) + "," + format_double(c.closed_form) +
                 "," + (ok ? "true" : "false") + "\n",
             out);
      }
      return ok ? 0 : 1;
    }
    if (app.got_subcommand(c_findp0)) {
      if (st.p_min >= 1.0 || st.p_max > 1.0) {
        st.p_min = 0.05;
        st.p_max = 1.0;
      }
      const P0Result res = find_p0(uniform_grid(st.y_min, st.y_max, st.y_steps),
                                   st.p_min, st.p_max, st.p0_tol, opts);
      if (st.format == "json") {
        nlohmann::json entries = nlohmann::json::array();
        for (const auto& e : res.entries) {
          entries.push_back({{"y", e.y},
                             {"outcome", e.sign_change ? "threshold" : "no-sign-change"},
                             {"threshold", e.threshold}});
        }
        nlohmann::json j{{"p0_estimate", res.p0_estimate},
                         {"any_change", res.any_change},
                         {"entries", std::move(entries)}};
        emit(st, j.dump(2) + "\n", out);
      } else {
        std::string csv = "y,threshold,outcome\n";
        for (const auto& e : res.entries) {
          csv += format_double(e.y) + "," + format_double(e.threshold) + "," +
                 (e.sign_change ? "threshold" : "no-sign-change") + "\n";
        }
        csv += "p0_estimate," + format_double(res.p0_estimate) + ",\n";
        emit(st, csv, out);
      }
      return 0;
    }
    err << "no subcommand\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace gentrig
