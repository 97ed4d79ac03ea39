#include "plbvp/timemap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "plbvp/errors.hpp"
#include "plbvp/interp.hpp"
#include "plbvp/quadrature.hpp"

namespace plbvp {

namespace {

constexpr Index kAdmissibilitySamples = 10000;

// Integrand of the time map in the de-singularized variable s, restricted
// to (s_lo, s_hi) within (0, L), L = alpha^{1/q}, and mapped onto (0, 1).
// With u = alpha - s^q the substitution collapses to
//   Psi(s) = q^{1-1/p} * R(s^q)^{-1/p},
// R being the gap ratio (F(alpha) - F(u)) / (alpha - u), so no endpoint
// power of s survives.  Near u = 0 the depth is taken from the complement
// of t to keep u accurate; the only possible singularity left is R -> 0
// there (the boundary amplitude), which tanh-sinh absorbs.
class TimeMapPiece {
 public:
  TimeMapPiece(const EnergyGap& gap, const Exponent& e, Scalar L, Scalar s_lo,
               Scalar s_hi)
      : gap_(gap),
        alpha_(gap.alpha()),
        q_(e.q()),
        inv_p_(1 / e.p()),
        coef_(std::pow(e.q(), 1 - 1 / e.p())),
        L_(L),
        s_lo_(s_lo),
        width_(s_hi - s_lo),
        tail_(L - s_hi) {}

  Scalar operator()(Scalar t, Scalar omt) const {
    const Scalar s = s_lo_ + width_ * t;
    const Scalar depth = std::pow(s, q_);
    Scalar ratio;
    if (depth <= Scalar(0.5) * alpha_) {
      ratio = gap_.ratio_at_depth(depth);
    } else {
      // (L - s)/L from the complement so u stays accurate as u -> 0.  The
      // floor keeps u^2 away from underflow at the boundary amplitude; the
      // affected tail nodes carry weights below 1e-100.
      const Scalar rem = (width_ * omt + tail_) / L_;
      Scalar u = alpha_ * (-std::expm1(q_ * std::log1p(-rem)));
      u = std::max(u, Scalar(1e-150) * alpha_);
      ratio = gap_.at_u(u) / (alpha_ - u);
    }
    return width_ * coef_ * std::pow(ratio, -inv_p_);
  }

 private:
  const EnergyGap& gap_;
  Scalar alpha_, q_, inv_p_, coef_, L_, s_lo_, width_, tail_;
};

// Exponent k of the leading power of F(alpha) - F(u) ~ c u^k at u = 0 in
// the boundary case F(alpha) = 0; 0 when the expansion is degenerate.
int boundary_exponent(const PolyNonlinearity& nl) {
  const Scalar scale = nl.coeff_scale();
  if (std::abs(eval_f(nl, Scalar(0))) > Scalar(1e-12) * scale) return 1;
  if (std::abs(eval_fprime(nl, Scalar(0))) > Scalar(1e-12) * scale) return 2;
  return 0;
}

}  // namespace

Admissibility is_admissible(const PolyNonlinearity& nl, const Exponent& e,
                            Scalar alpha) {
  if (!(alpha > 0)) throw DomainError("is_admissible: alpha must be > 0");

  const Scalar F_alpha = eval_F(nl, alpha);

  // Interior scan of F(alpha) - F(u), augmented by the extrema of F.
  Scalar interior_min = std::numeric_limits<Scalar>::infinity();
  auto consider = [&](Scalar u) {
    if (u <= 0 || u >= alpha) return;
    interior_min = std::min(interior_min, F_alpha - eval_F(nl, u));
  };
  for (Index i = 1; i < kAdmissibilitySamples; ++i)
    consider(alpha * Scalar(i) / Scalar(kAdmissibilitySamples));
  if (poly_degree(nl.coeffs()) <= 5)
    for (Scalar r : poly_real_roots(nl.coeffs(), Scalar(0), alpha)) consider(r);

  Admissibility adm;
  const Scalar boundary_tol = Scalar(1e-11) * nl.F_scale();

  if (!(interior_min > 0)) {
    adm.margin = interior_min;
    adm.reason = "F(alpha) < sup F on (0,alpha)";
    return adm;
  }
  if (F_alpha > boundary_tol) {
    adm.admissible = true;
    adm.margin = std::min(interior_min, F_alpha);
    return adm;
  }
  if (F_alpha >= 0) {
    // Endpoint gap vanishes; accept only an integrable local expansion.
    // The band is one-sided: any negative F(alpha) makes the integrand
    // complex near u = 0 and the amplitude inadmissible.
    const int k = boundary_exponent(nl);
    if (k > 0 && Scalar(k) / e.p() < 1) {
      adm.admissible = true;
      adm.boundary_case = true;
      adm.margin = F_alpha;
      return adm;
    }
    adm.boundary_case = true;
    adm.margin = F_alpha;
    adm.reason = "boundary amplitude: time-map integrand not integrable at u = 0";
    return adm;
  }
  adm.margin = F_alpha;
  adm.reason = "F(alpha) < sup F on (0,alpha)";
  return adm;
}

Scalar time_integral(const PolyNonlinearity& nl, const Exponent& e,
                     Scalar alpha, const TimemapOptions& opts) {
  const Admissibility adm = is_admissible(nl, e, alpha);
  if (!adm.admissible)
    throw DomainError("time_integral: inadmissible alpha = " +
                      std::to_string(alpha) + " (" + adm.reason + ")");

  const EnergyGap gap(nl, alpha);
  const Scalar L = std::pow(alpha, 1 / e.q());
  const TimeMapPiece piece(gap, e, L, 0, L);
  return integrate_singular(piece, opts.quad_rel_tol).value;
}

Scalar lambda_of_alpha(const PolyNonlinearity& nl, const Exponent& e,
                       Scalar alpha, const TimemapOptions& opts) {
  return std::pow(time_integral(nl, e, alpha, opts), e.p());
}

Scalar dlambda_dalpha(const PolyNonlinearity& nl, const Exponent& e,
                      Scalar alpha, const TimemapOptions& opts) {
  const Scalar h = Scalar(1e-4) * alpha;
  for (Scalar a : {alpha + h, alpha - h, alpha + h / 2, alpha - h / 2})
    if (!is_admissible(nl, e, a).admissible)
      throw DomainError(
          "dlambda_dalpha: alpha +/- h leaves the admissible set");

  // The difference quotient amplifies quadrature noise by 1/h, so the four
  // lambda evaluations run at a tighter tolerance.
  TimemapOptions tight = opts;
  tight.quad_rel_tol = std::min(opts.quad_rel_tol, Scalar(1e-12));
  auto lam = [&](Scalar a) { return lambda_of_alpha(nl, e, a, tight); };
  const Scalar d_h = (lam(alpha + h) - lam(alpha - h)) / (2 * h);
  const Scalar d_h2 = (lam(alpha + h / 2) - lam(alpha - h / 2)) / h;
  return (4 * d_h2 - d_h) / 3;
}

Scalar boundary_slope(const PolyNonlinearity& nl, const Exponent& e,
                      Scalar alpha, Scalar lambda) {
  const Scalar gap = std::max(eval_F(nl, alpha), Scalar(0));
  return -std::pow(e.q() * lambda * gap, 1 / e.p());
}

Array profile_energy(const PolyNonlinearity& nl, const Exponent& e,
                     const Profile& profile) {
  const Scalar p = e.p();
  Array energy(profile.x.size());
  for (Index i = 0; i < energy.size(); ++i)
    energy[i] = (p - 1) / p * std::pow(std::abs(profile.uprime[i]), p) +
                profile.lambda * eval_F(nl, profile.u[i]);
  return energy;
}

Profile reconstruct_profile(const PolyNonlinearity& nl, const Exponent& e,
                            Scalar alpha, Index n_grid,
                            const TimemapOptions& opts) {
  if (n_grid < 16)
    throw DomainError("reconstruct_profile: n_grid must be >= 16");
  const Admissibility adm = is_admissible(nl, e, alpha);
  if (!adm.admissible)
    throw DomainError("reconstruct_profile: inadmissible alpha = " +
                      std::to_string(alpha) + " (" + adm.reason + ")");

  const EnergyGap gap(nl, alpha);
  const Scalar q = e.q();
  const Scalar L = std::pow(alpha, 1 / q);

  // Graded tableau: uniform in s means u-spacing clustered near u = alpha,
  // where x(u) needs resolving.
  const Index segments = std::max(opts.tableau_floor, 2 * (n_grid - 1));
  Array s_nodes = Array::LinSpaced(segments + 1, 0, L);
  Array x_tab(segments + 1), u_tab(segments + 1);

  Scalar accum = 0;
  x_tab[0] = 0;
  u_tab[0] = alpha;
  for (Index j = 0; j < segments; ++j) {
    const TimeMapPiece piece(gap, e, L, s_nodes[j], s_nodes[j + 1]);
    accum += integrate_singular(piece, opts.profile_tol).value;
    x_tab[j + 1] = accum;
    u_tab[j + 1] = alpha - std::pow(s_nodes[j + 1], q);
  }
  const Scalar total = accum;  // = I(alpha) up to quadrature tolerance
  x_tab /= total;
  x_tab[segments] = 1;
  u_tab[segments] = 0;

  Profile profile;
  profile.lambda = std::pow(total, e.p());
  const MonotoneCubic u_of_x(x_tab, u_tab);

  profile.x = Array::LinSpaced(n_grid, 0, 1);
  profile.u.resize(n_grid);
  profile.uprime.resize(n_grid);
  profile.m.resize(n_grid);
  for (Index i = 0; i < n_grid; ++i) {
    Scalar u = i == 0 ? alpha : (i == n_grid - 1 ? Scalar(0) : u_of_x(profile.x[i]));
    profile.u[i] = u;
    const Scalar g = std::max(gap.at_u(u), Scalar(0));
    profile.uprime[i] = -std::pow(q * profile.lambda * g, 1 / e.p());
    profile.m[i] = phi(profile.uprime[i], e);
  }

  if (alpha > nl.gamma()) {
    Scalar lo = 0, hi = 1;
    for (int it = 0; it < 120 && hi - lo > Scalar(1e-13); ++it) {
      const Scalar mid = Scalar(0.5) * (lo + hi);
      (u_of_x(mid) > nl.gamma() ? lo : hi) = mid;
    }
    profile.x0 = Scalar(0.5) * (lo + hi);
  }
  return profile;
}

namespace {

// Bisection of the admissibility margin sign; keeps the admissible side.
Scalar bisect_admissibility_boundary(const PolyNonlinearity& nl,
                                     const Exponent& e, Scalar bad,
                                     Scalar good) {
  for (int it = 0; it < 200; ++it) {
    const Scalar mid = Scalar(0.5) * (bad + good);
    if (mid == bad || mid == good) break;
    (is_admissible(nl, e, mid).admissible ? good : bad) = mid;
    if (std::abs(good - bad) <= 4 * std::numeric_limits<Scalar>::epsilon() *
                                    std::max(Scalar(1), std::abs(mid)))
      break;
  }
  return good;
}

}  // namespace

Curve trace_curve(const PolyNonlinearity& nl, const Exponent& e,
                  Scalar alpha_min, Scalar alpha_max, Index n_points,
                  const TraceOptions& opts) {
  if (!(alpha_min > 0) || !(alpha_max > alpha_min))
    throw DomainError("trace_curve: need alpha_max > alpha_min > 0");
  if (n_points < 1) throw DomainError("trace_curve: n_points must be >= 1");

  Array alphas(n_points);
  if (n_points == 1)
    alphas[0] = alpha_min;
  else
    alphas = Array::LinSpaced(n_points, alpha_min, alpha_max);

  std::vector<Admissibility> adms(n_points);
  std::vector<CurvePoint> points(n_points);

  auto evaluate_range = [&](Index begin, Index end) {
    for (Index i = begin; i < end; ++i) {
      const Scalar a = alphas[i];
      try {
        adms[i] = is_admissible(nl, e, a);
        if (!adms[i].admissible) continue;
        CurvePoint pt;
        pt.alpha = a;
        pt.lambda = lambda_of_alpha(nl, e, a, opts);
        try {
          pt.dlambda_dalpha = dlambda_dalpha(nl, e, a, opts);
        } catch (const DomainError&) {
          // amplitude sits against the admissibility boundary
        }
        pt.uprime_at_1 = boundary_slope(nl, e, a, pt.lambda);
        if (opts.w_at_1_fn) pt.w_at_1 = opts.w_at_1_fn(a);
        points[i] = pt;
      } catch (const std::exception& ex) {
        adms[i].admissible = false;
        adms[i].reason = std::string("evaluation failed: ") + ex.what();
      }
    }
  };

  const int threads = std::max(1, opts.threads);
  if (threads == 1 || n_points < 2) {
    evaluate_range(0, n_points);
  } else {
    std::vector<std::thread> pool;
    const Index chunk = (n_points + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      const Index begin = Index(t) * chunk;
      const Index end = std::min<Index>(begin + chunk, n_points);
      if (begin >= end) break;
      pool.emplace_back(evaluate_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  Curve curve;
  for (Index i = 0; i < n_points; ++i) {
    if (adms[i].admissible)
      curve.points.push_back(points[i]);
    else
      curve.rejected.push_back({alphas[i], adms[i].margin, adms[i].reason});
  }

  // Locate the admissibility boundary: first check for a sign change inside
  // the sweep, then below it when the whole window is admissible.
  std::optional<Scalar> star;
  for (Index i = 0; i + 1 < n_points && !star; ++i) {
    const bool a0 = adms[i].admissible, a1 = adms[i + 1].admissible;
    if (a0 == a1) continue;
    const Scalar bad = a0 ? alphas[i + 1] : alphas[i];
    const Scalar good = a0 ? alphas[i] : alphas[i + 1];
    star = bisect_admissibility_boundary(nl, e, bad, good);
  }
  if (!star && adms[0].admissible && nl.gamma() < alpha_min &&
      nl.gamma() > 0) {
    if (!is_admissible(nl, e, nl.gamma()).admissible)
      star = bisect_admissibility_boundary(nl, e, nl.gamma(), alpha_min);
  }

  if (star) {
    curve.alpha_star = *star;
    try {
      curve.lambda0 = std::pow(time_integral(nl, e, *star, opts), e.p());
    } catch (const DomainError&) {
      // boundary-case integral refused to converge; leave lambda0 unset
    }
  }
  return curve;
}

}  // namespace plbvp
