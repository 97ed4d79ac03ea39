#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>

#include "plbvp/config.hpp"
#include "plbvp/diagnostics.hpp"
#include "plbvp/errors.hpp"
#include "plbvp/report_io.hpp"
#include "plbvp/shooting.hpp"
#include "plbvp/timemap.hpp"

namespace {

using namespace plbvp;

void write_payload(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path + "'");
  out << payload;
  if (!out) throw ConfigError("write failed for '" + path + "'");
}

DiagnosticsOptions diagnostics_options(const ProblemConfig& cfg) {
  DiagnosticsOptions opts;
  opts.quad_rel_tol = cfg.tolerances.quad_rel_tol;
  opts.profile_tol = cfg.tolerances.profile_tol;
  opts.rk_tol = cfg.tolerances.rk_tol;
  return opts;
}

int cmd_check(const ProblemConfig& cfg) {
  const auto nl = cfg.nonlinearity();
  const auto e = cfg.exponent();
  const auto report = check_hypotheses(nl, e, cfg.u_max_or_default());
  std::cout << to_json(report);
  return report.all_ok() ? 0 : 2;
}

int cmd_curve(const ProblemConfig& cfg, Scalar alpha_min, Scalar alpha_max,
              Index n, const std::string& out_path, const std::string& svg_path,
              int threads) {
  const auto nl = cfg.nonlinearity();
  const auto e = cfg.exponent();

  TraceOptions opts;
  opts.quad_rel_tol = cfg.tolerances.quad_rel_tol;
  opts.profile_tol = cfg.tolerances.profile_tol;
  opts.threads = threads;
  const auto diag_opts = diagnostics_options(cfg);
  opts.w_at_1_fn = [&](Scalar alpha) -> Scalar {
    try {
      return diagnose(nl, e, alpha, diag_opts).point.w_at_1;
    } catch (const DomainError&) {
      return std::numeric_limits<Scalar>::quiet_NaN();
    }
  };

  const Curve curve = trace_curve(nl, e, alpha_min, alpha_max, n, opts);
  write_payload(out_path, curve_csv(curve));
  if (!svg_path.empty()) write_payload(svg_path, curve_svg(curve));
  return 0;
}

int cmd_solve(const ProblemConfig& cfg, Scalar alpha, const std::string& method,
              Index grid, const std::string& out_path) {
  const auto nl = cfg.nonlinearity();
  const auto e = cfg.exponent();

  const Scalar f_alpha = eval_f(nl, alpha);
  if (std::abs(f_alpha) <= Scalar(1e-9) * nl.coeff_scale())
    throw DomainError("f(alpha) = 0");
  if (f_alpha < 0) throw DomainError("f(alpha) < 0");
  const Admissibility adm = is_admissible(nl, e, alpha);
  if (!adm.admissible) throw DomainError("inadmissible alpha: " + adm.reason);

  Profile profile;
  Scalar b = 0;
  bool has_b = false;
  if (method == "timemap") {
    TimemapOptions opts;
    opts.quad_rel_tol = cfg.tolerances.quad_rel_tol;
    opts.profile_tol = cfg.tolerances.profile_tol;
    profile = reconstruct_profile(nl, e, alpha, grid, opts);
  } else {
    ShootOptions opts;
    opts.rk_tol = cfg.tolerances.rk_tol;
    opts.n_grid = grid;
    const ShootResult shot = shoot_and_scale(nl, e, alpha, opts);
    profile = shot.profile;
    b = shot.b;
    has_b = true;
  }

  write_payload(out_path, profile_csv(profile));
  std::cout << solve_summary_json(profile, b, has_b);
  return 0;
}

int cmd_diagnose(const ProblemConfig& cfg, Scalar alpha,
                 bool require_nonsingular) {
  const auto nl = cfg.nonlinearity();
  const auto e = cfg.exponent();
  const Diagnosis d = diagnose(nl, e, alpha, diagnostics_options(cfg));
  std::cout << diagnosis_json(d);
  if (require_nonsingular && !d.verdict_nonsingular) return 2;
  return 0;
}

int cmd_invariants(const ProblemConfig& cfg, Scalar alpha) {
  const auto nl = cfg.nonlinearity();
  const auto e = cfg.exponent();
  std::cout << to_json(invariant_report(nl, e, alpha, diagnostics_options(cfg)));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-dimensional p-Laplace Dirichlet problem: time-map solver, "
               "solution-curve tracer, and linearized diagnostics"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads for sweeps (0 = hardware)");

  std::string config_path;

  auto* check = app.add_subcommand("check", "verify the structure hypotheses on f");
  check->add_option("config", config_path, "problem config file")->required();

  double alpha_min = 0, alpha_max = 0, alpha = 0;
  Index n_points = 50;
  Index grid = 1025;
  std::string out_path, svg_path, method = "timemap";
  bool require_nonsingular = false;

  auto* curve = app.add_subcommand("curve", "trace the solution curve");
  curve->add_option("config", config_path, "problem config file")->required();
  curve->add_option("--alpha-min", alpha_min)->required();
  curve->add_option("--alpha-max", alpha_max)->required();
  curve->add_option("--n", n_points, "number of amplitudes");
  curve->add_option("--out", out_path, "CSV output file (default stdout)");
  curve->add_option("--svg", svg_path, "optional SVG chart file");

  auto* solve = app.add_subcommand("solve", "compute one solution profile");
  solve->add_option("config", config_path, "problem config file")->required();
  solve->add_option("--alpha", alpha)->required();
  solve->add_option("--method", method)
      ->check(CLI::IsMember({"timemap", "shoot"}));
  solve->add_option("--grid", grid, "profile grid points");
  solve->add_option("--out", out_path, "profile CSV file")->required();

  auto* diagnose_cmd = app.add_subcommand("diagnose", "linearized verdict at one amplitude");
  diagnose_cmd->add_option("config", config_path, "problem config file")->required();
  diagnose_cmd->add_option("--alpha", alpha)->required();
  diagnose_cmd->add_flag("--require-nonsingular", require_nonsingular,
                         "exit 2 when the verdict is singular");

  auto* invariants = app.add_subcommand("invariants", "invariant report at one amplitude");
  invariants->add_option("config", config_path, "problem config file")->required();
  invariants->add_option("--alpha", alpha)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (threads <= 0) {
    const unsigned hw = std::thread::hardware_concurrency();
    threads = hw > 0 ? static_cast<int>(hw) : 1;
  }

  try {
    const plbvp::ProblemConfig cfg = plbvp::load_config(config_path);
    if (*check) return cmd_check(cfg);
    if (*curve)
      return cmd_curve(cfg, alpha_min, alpha_max, n_points, out_path, svg_path,
                       threads);
    if (*solve) return cmd_solve(cfg, alpha, method, grid, out_path);
    if (*diagnose_cmd) return cmd_diagnose(cfg, alpha, require_nonsingular);
    if (*invariants) return cmd_invariants(cfg, alpha);
  } catch (const plbvp::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const plbvp::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
