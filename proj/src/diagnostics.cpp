#include "plbvp/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "plbvp/errors.hpp"
#include "plbvp/interp.hpp"

namespace plbvp {

namespace {

TimemapOptions timemap_options(const DiagnosticsOptions& opts) {
  TimemapOptions tm;
  tm.quad_rel_tol = opts.quad_rel_tol;
  tm.profile_tol = opts.profile_tol;
  return tm;
}

Scalar fill_dlambda(const PolyNonlinearity& nl, const Exponent& e,
                    Scalar alpha, const DiagnosticsOptions& opts) {
  try {
    return dlambda_dalpha(nl, e, alpha, timemap_options(opts));
  } catch (const DomainError&) {
    return std::numeric_limits<Scalar>::quiet_NaN();
  }
}

template <typename Fn>
Scalar simpson(Fn&& fn, Scalar a, Scalar b, Index n_intervals) {
  if (n_intervals % 2 == 1) ++n_intervals;
  const Scalar h = (b - a) / Scalar(n_intervals);
  Scalar sum = fn(a) + fn(b);
  for (Index i = 1; i < n_intervals; ++i)
    sum += (i % 2 == 1 ? 4 : 2) * fn(a + h * Scalar(i));
  return sum * h / 3;
}

}  // namespace

Diagnosis diagnose(const PolyNonlinearity& nl, const Exponent& e, Scalar alpha,
                   const DiagnosticsOptions& opts) {
  const Admissibility adm = is_admissible(nl, e, alpha);
  if (!adm.admissible)
    throw DomainError("diagnose: inadmissible alpha = " +
                      std::to_string(alpha) + " (" + adm.reason + ")");

  Diagnosis d;
  d.profile = reconstruct_profile(nl, e, alpha, opts.n_grid,
                                  timemap_options(opts));
  d.linearized =
      integrate_linearized_along(nl, e, d.profile, {opts.rk_tol, opts.h0});

  d.point.alpha = alpha;
  d.point.lambda = d.profile.lambda;
  d.point.dlambda_dalpha = fill_dlambda(nl, e, alpha, opts);
  d.point.uprime_at_1 = boundary_slope(nl, e, alpha, d.profile.lambda);
  d.point.w_at_1 = d.linearized.w_at_1;

  const Scalar w_max = d.linearized.w.abs().maxCoeff();
  d.verdict_nonsingular = std::abs(d.linearized.w_at_1) > Scalar(1e-4) * w_max;
  return d;
}

InvariantReport invariant_report(const PolyNonlinearity& nl, const Exponent& e,
                                 Scalar alpha,
                                 const DiagnosticsOptions& opts) {
  if (!(alpha > nl.gamma()))
    throw DomainError("invariant_report: alpha must exceed gamma");

  const Diagnosis d = diagnose(nl, e, alpha, opts);
  const Profile& prof = d.profile;
  const LinearizedProfile& lin = d.linearized;
  if (!prof.x0)
    throw DomainError("invariant_report: profile has no crossing u(x0) = gamma");

  const Scalar p = e.p();
  const Scalar q = e.q();
  const Scalar lambda = prof.lambda;
  const Scalar x0 = *prof.x0;
  const Scalar delta = 10 * opts.h0;
  const Index n = prof.x.size();

  const HermiteSeries u_interp(prof.x, prof.u, prof.uprime);
  auto u_of_x = [&, alpha](Scalar x) {
    return std::clamp(u_interp(x), Scalar(0), alpha);
  };
  const EnergyGap gap(nl, alpha);
  auto uprime_at = [&](Scalar x) {
    const Scalar g = std::max(gap.at_u(u_of_x(x)), Scalar(0));
    return -std::pow(q * lambda * g, 1 / p);
  };

  // Hermite interpolants of w and n carry their exact grid slopes.  At a
  // boundary amplitude the right endpoint has u'(1) = 0 and the slope of w
  // degenerates with phi'.
  Array w_slope(n), n_slope(n);
  w_slope[0] = 0;
  for (Index i = 1; i < n; ++i) {
    const Scalar phip =
        prof.uprime[i] == 0 ? Scalar(0) : phi_prime(prof.uprime[i], e);
    w_slope[i] = phip > 0 ? lin.n[i] / phip : Scalar(0);
  }
  for (Index i = 0; i < n; ++i)
    n_slope[i] = -lambda * eval_fprime(nl, prof.u[i]) * lin.w[i];
  const HermiteSeries w_of_x(prof.x, lin.w, w_slope);
  const HermiteSeries n_of_x(prof.x, lin.n, n_slope);
  auto wprime_at = [&](Scalar x) {
    const Scalar up = uprime_at(x);
    if (up == 0) return Scalar(0);
    return n_of_x(x) / phi_prime(up, e);
  };

  InvariantReport rep;
  rep.alpha = alpha;
  rep.lambda = lambda;
  rep.x0 = x0;
  rep.origin_exclusion = delta;
  rep.w_at_1 = lin.w_at_1;
  rep.positive_up_to_x0 = lin.positive_up_to_x0;
  rep.verdict_nonsingular = d.verdict_nonsingular;

  // Energy constancy across the stored grid.
  {
    const Array energy = profile_energy(nl, e, prof);
    rep.energy_drift =
        (energy - energy[0]).abs().maxCoeff() / (1 + std::abs(energy[0]));
  }

  const Scalar up_x0 = uprime_at(x0);
  const Scalar u_x0 = u_of_x(x0);
  const Scalar w_x0 = w_of_x(x0);
  const Scalar wp_x0 = wprime_at(x0);
  const Scalar phi_up_x0 = phi(up_x0, e);
  const Scalar phip_up_x0 = phi_prime(up_x0, e);

  rep.q_at_x0 = (p - 1) * (1 - x0) * phi_up_x0 + phip_up_x0 * u_x0;
  rep.z_at_x0 = (1 - x0) * up_x0 + u_x0;
  rep.u_dprime_at_x0 = std::abs(lambda * eval_f(nl, u_x0)) / phip_up_x0;
  // w' phi'(u') is the linearized flux n, so G needs no division.
  rep.G_at_x0 = (p - 1) * w_x0 * phi_up_x0 - u_x0 * n_of_x(x0);

  // Slope comparison on the grid strictly inside (x0, 1).
  rep.ineq_3_7_ok = true;
  for (Index i = 0; i < n; ++i) {
    if (prof.x[i] <= x0 || prof.x[i] >= 1) continue;
    if (!(up_x0 - prof.uprime[i] < 0)) rep.ineq_3_7_ok = false;
  }

  const Index n_sub = 4 * (n - 1);

  // G identity in integral form on [delta, x0].
  {
    auto G_at = [&](Scalar x) {
      return (p - 1) * w_of_x(x) * phi(uprime_at(x), e) -
             u_of_x(x) * n_of_x(x);
    };
    auto integrand = [&](Scalar x) {
      const Scalar u = u_of_x(x);
      return lambda * (u * eval_fprime(nl, u) - (p - 1) * eval_f(nl, u)) *
             w_of_x(x);
    };
    const Scalar integral = simpson(integrand, delta, x0, n_sub);
    rep.G_identity_residual = std::abs(rep.G_at_x0 - G_at(delta) - integral);
  }

  // T identity in integral form on [x0, 1]; (p-1) phi(u') w' collapses to
  // u' n through (p-1) phi(t) = t phi'(t).
  {
    auto T_at = [&](Scalar x) {
      const Scalar up = uprime_at(x);
      const Scalar u = u_of_x(x);
      const Scalar w = w_of_x(x);
      return x * (up * n_of_x(x) + lambda * eval_f(nl, u) * w) -
             (p - 1) * phi(up, e) * w;
    };
    auto integrand = [&](Scalar x) {
      return lambda * eval_f(nl, u_of_x(x)) * w_of_x(x);
    };
    const Scalar integral = p * simpson(integrand, x0, Scalar(1), n_sub);
    rep.T_identity_residual = std::abs(T_at(1) - T_at(x0) - integral);
  }

  // K(x) = u' n + lambda f(u) w constancy on [delta, 1]; its value at the
  // right endpoint must match the reduction (p-1) phi(u'(x0)) w'(x0), which
  // rests on u''(x0) = 0.
  {
    Scalar k_min = std::numeric_limits<Scalar>::infinity();
    Scalar k_max = -k_min;
    Scalar k_abs = 0;
    Scalar k_at_1 = 0;
    for (Index i = 0; i < n; ++i) {
      if (prof.x[i] < delta) continue;
      const Scalar k = prof.uprime[i] * lin.n[i] +
                       lambda * eval_f(nl, prof.u[i]) * lin.w[i];
      k_min = std::min(k_min, k);
      k_max = std::max(k_max, k);
      k_abs = std::max(k_abs, std::abs(k));
      if (i == n - 1) k_at_1 = k;
    }
    rep.wronskian_spread = (k_max - k_min) / std::max(k_abs, Scalar(1e-300));
    const Scalar k_reduced = (p - 1) * phi_up_x0 * wp_x0;
    rep.wronskian_endpoint_residual =
        std::abs(k_at_1 - k_reduced) / std::max(k_abs, Scalar(1e-300));
  }

  return rep;
}

}  // namespace plbvp
