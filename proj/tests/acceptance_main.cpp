// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria capped at 1.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plbvp/diagnostics.hpp"
#include "plbvp/quadrature.hpp"
#include "plbvp/shooting.hpp"
#include "plbvp/timemap.hpp"

using namespace plbvp;
namespace fs = std::filesystem;

namespace {

constexpr Scalar kPi = 3.141592653589793;

PolyNonlinearity quartic_example() {
  Array c(5);
  c << 0, -8, 14, -7, 1;
  return PolyNonlinearity(c, 4.0);
}

PolyNonlinearity affine() {
  Array c(2);
  c << -1, 1;
  return PolyNonlinearity(c, 1.0);
}

PolyNonlinearity pure_linear(Scalar gamma) {
  Array c(2);
  c << 0, 1;
  return PolyNonlinearity(c, gamma);
}

struct Harness {
  int failures = 0;

  void run(int idx, const std::string& name, double budget_ms,
           const std::function<bool(std::string&)>& fn) {
    std::string note;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = fn(note);
    } catch (const std::exception& e) {
      ok = false;
      note = std::string("exception: ") + e.what();
    }
    const double ms =
        std::chrono::duration<double, std::milli>(
            std::chrono::steady_clock::now() - t0)
            .count();
    if (ok && budget_ms > 0 && ms > budget_ms) {
      ok = false;
      note = "runtime budget exceeded";
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %d: %s (%.0f ms)%s%s\n", ok ? "PASS" : "FAIL",
                idx, name.c_str(), ms, note.empty() ? "" : " -- ",
                note.c_str());
    std::fflush(stdout);
  }
};

bool close_rel(Scalar a, Scalar b, Scalar tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

// Test-side time-map integral for f(u) = u^{p-1}, F(u) = u^p / p, covering
// non-integer p - 1: after u = alpha - s^q the integrand is
// q^{1-1/p} R^{-1/p} with R the gap ratio, integrated over s in (0, L).
Scalar power_time_integral(Scalar p, Scalar alpha) {
  const Scalar q = p / (p - 1);
  const Scalar L = std::pow(alpha, 1 / q);
  const Scalar alpha_p = std::pow(alpha, p);
  auto psi = [&](Scalar t, Scalar omt) {
    const Scalar s = L * t;
    const Scalar depth = std::pow(s, q);
    Scalar ratio;
    if (depth == 0) {
      ratio = std::pow(alpha, p - 1);
    } else if (depth <= 0.5 * alpha) {
      ratio = alpha_p * (-std::expm1(p * std::log1p(-depth / alpha))) /
              (p * depth);
    } else {
      const Scalar u = alpha * (-std::expm1(q * std::log1p(-omt)));
      ratio = (alpha_p - std::pow(u, p)) / p / (alpha - u);
    }
    return L * std::pow(q, 1 - 1 / p) * std::pow(ratio, -1 / p);
  };
  return integrate_singular(psi, Scalar(1e-12)).value;
}

std::string cli_path_or_empty() {
  const char* env = std::getenv("PLBVP_CLI");
  return env ? env : "";
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  Harness h;
  const auto example = quartic_example();
  const Exponent p3(3.0);
  const Exponent p2(2.0);

  // shared sweep for criteria 4 and 5
  Curve sweep;

  h.run(1, "linear eigenvalue oracle (p=2, f=u)", 1000, [&](std::string& note) {
    const auto nl = pure_linear(0.5);
    const Scalar target = kPi * kPi / 4;
    for (Scalar alpha : {0.5, 1.0, 2.0}) {
      const Scalar lam_map = lambda_of_alpha(nl, p2, alpha);
      const Scalar lam_shoot = shoot_and_scale(nl, p2, alpha).lambda;
      if (!close_rel(lam_map, target, 1e-8)) {
        note = "timemap lambda off at alpha = " + std::to_string(alpha);
        return false;
      }
      if (!close_rel(lam_shoot, target, 1e-8)) {
        note = "shoot lambda off at alpha = " + std::to_string(alpha);
        return false;
      }
    }
    return true;
  });

  h.run(2, "affine closed-form family (p=2, f=u-1)", 5000,
        [&](std::string& note) {
          const auto nl = affine();
          if (!close_rel(lambda_of_alpha(nl, p2, 3.0), 4 * kPi * kPi / 9,
                         1e-7)) {
            note = "lambda(3) mismatch";
            return false;
          }
          for (int i = 1; i <= 10; ++i) {
            const Scalar alpha = 2.05 + (8.0 - 2.05) * (i - 1) / 9.0;
            const Scalar expected = std::pow(std::acos(1 / (1 - alpha)), 2);
            if (!close_rel(lambda_of_alpha(nl, p2, alpha), expected, 1e-6)) {
              note = "lambda(alpha) mismatch at alpha = " + std::to_string(alpha);
              return false;
            }
          }
          const Scalar star = find_alpha_star(nl, 1.5, 4.0);
          if (std::abs(star - 2.0) > 1e-10) {
            note = "alpha_star off: " + std::to_string(star);
            return false;
          }
          const Scalar lambda0 = std::pow(time_integral(nl, p2, star), 2.0);
          if (!close_rel(lambda0, kPi * kPi, 1e-7)) {
            note = "lambda0 mismatch: " + std::to_string(lambda0);
            return false;
          }
          for (Scalar alpha : {3.0, 5.0}) {
            const auto d = diagnose(nl, p2, alpha);
            const Scalar expected = 1 / (1 - alpha);
            if (std::abs(d.point.w_at_1 - expected) > 1e-5) {
              note = "w(1) mismatch at alpha = " + std::to_string(alpha);
              return false;
            }
          }
          return true;
        });

  h.run(3, "cross-method agreement on the quartic example", 10000,
        [&](std::string& note) {
          for (Scalar alpha : {5.0, 6.0, 8.0, 10.0}) {
            const Scalar lam_map = lambda_of_alpha(example, p3, alpha);
            const Scalar lam_shoot = shoot_and_scale(example, p3, alpha).lambda;
            if (std::abs(lam_map - lam_shoot) / lam_map > 1e-5) {
              note = "methods disagree at alpha = " + std::to_string(alpha);
              return false;
            }
          }
          return true;
        });

  h.run(4, "solution curve decreasing on [4.8, 12] (50 amplitudes)", 30000,
        [&](std::string& note) {
          TraceOptions opts;
          opts.threads = 4;
          sweep = trace_curve(example, p3, 4.8, 12.0, 50, opts);
          if (sweep.points.size() != 50 || !sweep.rejected.empty()) {
            note = "expected 50 admissible amplitudes";
            return false;
          }
          for (size_t i = 0; i < sweep.points.size(); ++i) {
            if (!(sweep.points[i].dlambda_dalpha < 0)) {
              note = "dlambda/dalpha not negative at alpha = " +
                     std::to_string(sweep.points[i].alpha);
              return false;
            }
            if (i + 1 < sweep.points.size() &&
                !(sweep.points[i + 1].lambda < sweep.points[i].lambda)) {
              note = "lambda not strictly decreasing at alpha = " +
                     std::to_string(sweep.points[i + 1].alpha);
              return false;
            }
          }
          return true;
        });

  h.run(5, "non-singularity across the sweep, singular control detected", 0,
        [&](std::string& note) {
          if (sweep.points.empty()) {
            note = "criterion 4 sweep unavailable";
            return false;
          }
          for (const auto& pt : sweep.points) {
            const auto d = diagnose(example, p3, pt.alpha);
            if (!d.verdict_nonsingular) {
              note = "singular verdict at alpha = " + std::to_string(pt.alpha);
              return false;
            }
          }
          const auto control = diagnose(pure_linear(0.5), p2, 1.0);
          if (!(std::abs(control.point.w_at_1) <= 1e-6)) {
            note = "eigenvalue control not detected, w(1) = " +
                   std::to_string(control.point.w_at_1);
            return false;
          }
          if (control.verdict_nonsingular) {
            note = "eigenvalue control verdict should be singular";
            return false;
          }
          return true;
        });

  h.run(6, "hypothesis checker verdicts", 0, [&](std::string& note) {
    if (!check_hypotheses(example, p3, 16.0).all_ok()) {
      note = "quartic example should pass";
      return false;
    }
    const auto linear_rep = check_hypotheses(pure_linear(1.0), p2, 4.0);
    if (linear_rep.h41_ok) {
      note = "f(u) = u should fail the root condition";
      return false;
    }
    Array c(5);
    c << 0, -8, 14, -7, 1;
    const PolyNonlinearity mutated(c, 2.0);
    if (check_hypotheses(mutated, p3, 16.0).h42_ok) {
      note = "gamma = 2 mutant should fail the integral condition";
      return false;
    }
    return true;
  });

  h.run(7, "curve endpoint of the quartic example", 0, [&](std::string& note) {
    const Scalar star = find_alpha_star(example, 4.01, 8.0);
    if (!(star > 4.6 && star < 4.7)) {
      note = "alpha_star outside (4.6, 4.7): " + std::to_string(star);
      return false;
    }
    if (std::abs(eval_F(example, star)) > 1e-10 * example.F_scale()) {
      note = "F(alpha_star) too large";
      return false;
    }
    const Scalar lambda0 = std::pow(time_integral(example, p3, star), 3.0);
    if (!std::isfinite(lambda0) || !(lambda0 > 0)) {
      note = "lambda0 not finite";
      return false;
    }
    for (Scalar alpha : {1.5, 3.0}) {
      if (is_admissible(example, p3, alpha).admissible) {
        note = "alpha = " + std::to_string(alpha) + " should be rejected";
        return false;
      }
    }
    return true;
  });

  h.run(8, "invariant suite at alpha = 6 with grid-doubling", 0,
        [&](std::string& note) {
          DiagnosticsOptions base;
          const auto rep = invariant_report(example, p3, 6.0, base);
          auto fail = [&](const std::string& what) {
            note = what;
            return false;
          };
          if (!(rep.energy_drift <= 1e-8)) return fail("energy drift");
          if (!(rep.q_at_x0 < 0)) return fail("q(x0) sign");
          if (!(rep.z_at_x0 < 0)) return fail("z(x0) sign");
          if (!rep.ineq_3_7_ok) return fail("slope inequality");
          if (!(rep.u_dprime_at_x0 <= 1e-6)) return fail("u''(x0) residual");
          if (!(rep.wronskian_spread <= 1e-6)) return fail("wronskian spread");
          if (!(rep.wronskian_endpoint_residual <= 1e-6))
            return fail("wronskian endpoint relation");
          if (!(rep.G_identity_residual <= 1e-6)) return fail("G residual");
          if (!(rep.T_identity_residual <= 1e-6)) return fail("T residual");

          DiagnosticsOptions coarse = base;
          coarse.n_grid = (base.n_grid - 1) / 2 + 1;
          const auto rc = invariant_report(example, p3, 6.0, coarse);
          if (!(rep.G_identity_residual * 2 <= rc.G_identity_residual + 1e-14))
            return fail("G residual does not halve under doubling");
          if (!(rep.T_identity_residual * 2 <= rc.T_identity_residual + 1e-14))
            return fail("T residual does not halve under doubling");
          return true;
        });

  h.run(9, "property batch: scaling, homogeneity, round trip, determinism", 0,
        [&](std::string& note) {
          // scaling covariance f -> 2f
          {
            Array doubled = example.coeffs();
            doubled *= 2;
            const PolyNonlinearity nl2(doubled, 4.0);
            const Scalar lam = lambda_of_alpha(example, p3, 6.0);
            const Scalar lam2 = lambda_of_alpha(nl2, p3, 6.0);
            if (!close_rel(lam2, lam / 2, 1e-8)) {
              note = "scaling covariance violated";
              return false;
            }
          }
          // homogeneity across p (generic power route covers p = 1.5)
          for (Scalar p : {1.5, 2.0, 3.0}) {
            const Scalar i_half = power_time_integral(p, 0.5);
            const Scalar i_one = power_time_integral(p, 1.0);
            const Scalar i_two = power_time_integral(p, 2.0);
            const Scalar l_half = std::pow(i_half, p);
            const Scalar l_one = std::pow(i_one, p);
            const Scalar l_two = std::pow(i_two, p);
            const Scalar spread =
                std::max({l_half, l_one, l_two}) - std::min({l_half, l_one, l_two});
            if (!(spread <= 1e-8 * l_one)) {
              note = "homogeneity spread too large at p = " + std::to_string(p);
              return false;
            }
            if (p == 2.0 || p == 3.0) {
              // the polynomial route must agree with the generic one
              Array c = Array::Zero(static_cast<Index>(p));
              c[static_cast<Index>(p) - 1] = 1;
              const PolyNonlinearity nl(c, 1.0);
              const Exponent e(p);
              if (!close_rel(lambda_of_alpha(nl, e, 1.0), l_one, 1e-9)) {
                note = "polynomial and generic routes disagree";
                return false;
              }
            }
          }
          // phi round-trip batch
          {
            std::mt19937 rng(20240811);
            std::uniform_real_distribution<double> log_mag(std::log(1e-6),
                                                           std::log(1e3));
            std::uniform_real_distribution<double> p_dist(1.001, 6.0);
            std::bernoulli_distribution sign(0.5);
            for (int i = 0; i < 10000; ++i) {
              const double t = (sign(rng) ? 1 : -1) * std::exp(log_mag(rng));
              const Exponent e(p_dist(rng));
              const double back = phi_inv(phi(t, e), e);
              if (std::abs(back - t) > 1e-12 * std::max(1.0, std::abs(t))) {
                note = "phi round trip violated";
                return false;
              }
            }
          }
          // CLI determinism: serial vs 4-way parallel byte-identical
          {
            const std::string cli = cli_path_or_empty();
            if (cli.empty()) {
              note = "PLBVP_CLI not set";
              return false;
            }
            const fs::path dir = fs::current_path() / "acceptance_tmp";
            fs::remove_all(dir);
            fs::create_directories(dir);
            const fs::path cfg = dir / "quartic.cfg";
            std::ofstream(cfg) << "p = 3\ngamma = 4\ncoeffs = [0, -8, 14, -7, 1]\nu_max = 16\n";
            const fs::path out1 = dir / "serial.csv";
            const fs::path out4 = dir / "parallel.csv";
            auto run = [&](const std::string& args) {
              const std::string cmd = "\"" + cli + "\" " + args + " > /dev/null 2>&1";
              const int status = std::system(cmd.c_str());
              return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
            };
            const std::string win =
                " --alpha-min 4.8 --alpha-max 7.5 --n 6 --out ";
            if (run("--threads 1 curve " + cfg.string() + win + out1.string()) !=
                    0 ||
                run("--threads 4 curve " + cfg.string() + win + out4.string()) !=
                    0) {
              note = "CLI runs failed";
              return false;
            }
            if (read_file(out1) != read_file(out4) || read_file(out1).empty()) {
              note = "CLI outputs differ across thread counts";
              return false;
            }
          }
          return true;
        });

  std::printf("%d of 9 criteria passed\n", 9 - h.failures);
  return h.failures == 0 ? 0 : 1;
}
