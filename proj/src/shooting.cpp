#include "plbvp/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plbvp/errors.hpp"
#include "plbvp/interp.hpp"
#include "plbvp/ode.hpp"

namespace plbvp {

namespace {

struct SeriesCoefficients {
  Scalar c_u;  // u(x)  = alpha - c_u x^q
  Scalar c_m;  // m(x)  = -c_m x
  Scalar c_w;  // w(x)  = 1 - c_w x^q
  Scalar c_n;  // n(x)  = -c_n x
};

SeriesCoefficients series_coefficients(const PolyNonlinearity& nl,
                                       const Exponent& e, Scalar alpha,
                                       Scalar lambda) {
  const Scalar p = e.p();
  const Scalar f_a = eval_f(nl, alpha);
  const Scalar fp_a = eval_fprime(nl, alpha);
  SeriesCoefficients c;
  c.c_u = (p - 1) / p * std::pow(lambda * f_a, 1 / (p - 1));
  c.c_m = lambda * f_a;
  c.c_w = (p - 1) / p * lambda * fp_a *
          std::pow(lambda * f_a, -(p - 2) / (p - 1)) / (p - 1);
  c.c_n = lambda * fp_a;
  return c;
}

// phi'(u') expressed through the flux: phi'(phi_inv(m)) = (p-1)|m|^{(p-2)/(p-1)}.
Scalar phi_prime_of_flux(Scalar m, const Exponent& e) {
  const Scalar p = e.p();
  return (p - 1) * std::pow(std::abs(m), (p - 2) / (p - 1));
}

}  // namespace

std::pair<Scalar, Scalar> startup_series(const PolyNonlinearity& nl,
                                         const Exponent& e, Scalar alpha,
                                         Scalar h0) {
  if (!(h0 > 0) || h0 > Scalar(1e-4))
    throw DomainError("startup_series: need 0 < h0 <= 1e-4");
  if (!(eval_f(nl, alpha) > 0))
    throw DomainError(
        "startup_series: f(alpha) must be positive (no decreasing solution "
        "starts at alpha = " +
        std::to_string(alpha) + ")");
  const auto c = series_coefficients(nl, e, alpha, Scalar(1));
  return {alpha - c.c_u * std::pow(h0, e.q()), -c.c_m * h0};
}

ShootResult shoot_and_scale(const PolyNonlinearity& nl, const Exponent& e,
                            Scalar alpha, const ShootOptions& opts) {
  if (opts.n_grid < 16)
    throw DomainError("shoot_and_scale: n_grid must be >= 16");
  const auto [u_h0, m_h0] = startup_series(nl, e, alpha, opts.h0);
  const auto series = series_coefficients(nl, e, alpha, Scalar(1));
  const Scalar q = e.q();
  const bool joint = opts.with_linearized;

  RungeKutta54::Rhs rhs;
  if (!joint) {
    rhs = [&nl, &e](Scalar, const Vector& y, Vector& dy) {
      dy[0] = phi_inv(y[1], e);
      dy[1] = -eval_f(nl, y[0]);
    };
  } else {
    rhs = [&nl, &e](Scalar, const Vector& y, Vector& dy) {
      dy[0] = phi_inv(y[1], e);
      dy[1] = -eval_f(nl, y[0]);
      dy[2] = y[3] / phi_prime_of_flux(y[1], e);
      dy[3] = -eval_fprime(nl, y[0]) * y[2];
    };
  }

  Vector y0(joint ? 4 : 2);
  y0[0] = u_h0;
  y0[1] = m_h0;
  if (joint) {
    y0[2] = 1 - series.c_w * std::pow(opts.h0, q);
    y0[3] = -series.c_n * opts.h0;
  }

  const Scalar x_scale = std::pow(alpha, 1 / q);
  OdeOptions ode_opts;
  ode_opts.rel_tol = ode_opts.abs_tol = opts.rk_tol;
  ode_opts.initial_step = Scalar(1e-2) * x_scale;
  ode_opts.max_step = Scalar(0.5) * x_scale;

  const RungeKutta54 solver(rhs, ode_opts);
  const Scalar x_cap = Scalar(1e3) * x_scale;
  auto event = solver.integrate_until_zero(opts.h0, y0, 0, x_cap);

  // Second pass with steps capped well below the crossing length keeps the
  // in-step Hermite resampling error under the profile contracts.
  {
    OdeOptions fine = ode_opts;
    fine.max_step = event.x_event / 512;
    fine.initial_step = std::min(fine.max_step / 2, ode_opts.initial_step);
    const RungeKutta54 fine_solver(rhs, fine);
    event = fine_solver.integrate_until_zero(opts.h0, y0, 0, x_cap);
  }

  const Scalar b = event.x_event;
  ShootResult result;
  result.b = b;
  result.lambda = std::pow(b, e.p());

  // State sampler on [0, b]: series below h0, Hermite history above.
  auto sample = [&](Scalar x, Index comp) -> Scalar {
    if (x < opts.h0) {
      switch (comp) {
        case 0: return alpha - series.c_u * std::pow(x, q);
        case 1: return -series.c_m * x;
        case 2: return 1 - series.c_w * std::pow(x, q);
        default: return -series.c_n * x;
      }
    }
    return event.solution.component_at(x, comp);
  };

  const Index n = opts.n_grid;
  Profile& prof = result.profile;
  prof.lambda = result.lambda;
  prof.x = Array::LinSpaced(n, 0, 1);
  prof.u.resize(n);
  prof.uprime.resize(n);
  prof.m.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Scalar xs = b * prof.x[i];
    const Scalar u = i == 0 ? alpha : (i == n - 1 ? Scalar(0) : sample(xs, 0));
    const Scalar m_raw = i == 0 ? Scalar(0)
                                : (i == n - 1 ? event.y_event[1] : sample(xs, 1));
    prof.u[i] = u;
    prof.uprime[i] = b * phi_inv(m_raw, e);
    prof.m[i] = phi(prof.uprime[i], e);
  }

  if (alpha > nl.gamma()) {
    Scalar lo = 0, hi = 1;
    for (int it = 0; it < 120 && hi - lo > Scalar(1e-13); ++it) {
      const Scalar mid = Scalar(0.5) * (lo + hi);
      (sample(b * mid, 0) > nl.gamma() ? lo : hi) = mid;
    }
    prof.x0 = Scalar(0.5) * (lo + hi);
  }

  if (joint) {
    LinearizedProfile lin;
    lin.x = prof.x;
    lin.w.resize(n);
    lin.n.resize(n);
    const Scalar flux_scale = std::pow(b, e.p() - 1);
    for (Index i = 0; i < n; ++i) {
      const Scalar xs = b * prof.x[i];
      lin.w[i] = i == 0 ? Scalar(1) : sample(xs, 2);
      lin.n[i] = flux_scale * (i == 0 ? Scalar(0) : sample(xs, 3));
    }
    lin.w_at_1 = event.y_event[2];
    lin.positive_up_to_x0 = true;
    const Scalar x_limit = prof.x0 ? *prof.x0 : Scalar(1);
    for (Index i = 1; i < n; ++i)
      if (prof.x[i] <= x_limit && !(lin.w[i] > 0)) lin.positive_up_to_x0 = false;
    result.linearized = lin;
  }

  return result;
}

LinearizedProfile integrate_linearized_along(const PolyNonlinearity& nl,
                                             const Exponent& e,
                                             const Profile& profile,
                                             const LinearizedOptions& opts) {
  const Index n = profile.x.size();
  if (n < 2) throw DomainError("integrate_linearized_along: empty profile");
  if (!(profile.lambda > 0))
    throw DomainError("integrate_linearized_along: profile.lambda must be set");
  const Scalar grid_h = profile.x[1] - profile.x[0];
  if (grid_h * grid_h * grid_h > Scalar(1e4) * opts.rk_tol)
    throw DomainError(
        "integrate_linearized_along: profile grid too coarse for rk_tol");

  const Scalar alpha = profile.alpha();
  const Scalar lambda = profile.lambda;
  const Scalar q = e.q();
  if (!(eval_f(nl, alpha) > 0))
    throw DomainError("integrate_linearized_along: f(alpha) must be positive");

  // Interpolating u together with its stored energy slopes keeps the local
  // slope of the interpolant consistent with the u' recovered below.  The
  // clamp absorbs first-cell overshoot above alpha, which the cubic cannot
  // avoid when q > 3 (p < 3/2).
  const HermiteSeries u_interp(profile.x, profile.u, profile.uprime);
  auto u_of_x = [&, alpha](Scalar x) {
    return std::clamp(u_interp(x), Scalar(0), alpha);
  };
  const EnergyGap gap(nl, alpha);

  auto uprime_at = [&](Scalar x) {
    const Scalar g = std::max(gap.at_u(u_of_x(x)), Scalar(0));
    return -std::pow(q * lambda * g, 1 / e.p());
  };
  // w' = n / phi'(u'); the ratio tends to zero with u' for every p.
  auto wprime_from = [&](Scalar up, Scalar n_val) {
    if (up == 0) return Scalar(0);
    return n_val / phi_prime(up, e);
  };

  const auto series = series_coefficients(nl, e, alpha, lambda);
  Vector y0(2);
  y0[0] = 1 - series.c_w * std::pow(opts.h0, q);  // w
  y0[1] = -series.c_n * opts.h0;                  // n

  RungeKutta54::Rhs rhs = [&](Scalar x, const Vector& y, Vector& dy) {
    dy[0] = wprime_from(uprime_at(x), y[1]);
    dy[1] = -lambda * eval_fprime(nl, u_of_x(x)) * y[0];
  };

  OdeOptions ode_opts;
  ode_opts.rel_tol = ode_opts.abs_tol = opts.rk_tol;
  // Steps capped near the profile spacing keep the in-step samples of
  // (w, n) below the identity-residual budget of the diagnostics.
  ode_opts.max_step = std::clamp(2 * grid_h, Scalar(5e-4), Scalar(0.05));
  ode_opts.initial_step = ode_opts.max_step / 2;

  const RungeKutta54 solver(rhs, ode_opts);
  const auto sol = solver.integrate_to(opts.h0, y0, Scalar(1));

  LinearizedProfile lin;
  lin.x = profile.x;
  lin.w.resize(n);
  lin.n.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Scalar x = profile.x[i];
    if (x < opts.h0) {
      lin.w[i] = 1 - series.c_w * std::pow(x, q);
      lin.n[i] = -series.c_n * x;
    } else {
      lin.w[i] = sol.component_at(x, 0);
      lin.n[i] = sol.component_at(x, 1);
    }
  }
  lin.w_at_1 = sol.steps().back().y[0];
  lin.w[n - 1] = lin.w_at_1;

  lin.positive_up_to_x0 = true;
  const Scalar x_limit = profile.x0 ? *profile.x0 : Scalar(1);
  for (Index i = 1; i < n; ++i)
    if (profile.x[i] <= x_limit && !(lin.w[i] > 0)) lin.positive_up_to_x0 = false;
  return lin;
}

}  // namespace plbvp
