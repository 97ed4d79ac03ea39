#pragma once

#include "plbvp/shooting.hpp"
#include "plbvp/timemap.hpp"

namespace plbvp {

struct DiagnosticsOptions {
  Index n_grid = 2049;
  Scalar quad_rel_tol = 1e-10;
  Scalar profile_tol = 1e-10;
  Scalar rk_tol = 1e-10;
  Scalar h0 = 1e-4;
};

struct Diagnosis {
  CurvePoint point;  // w_at_1 filled
  bool verdict_nonsingular = false;
  Profile profile;
  LinearizedProfile linearized;
};

// Builds the time-map profile at alpha, integrates the even linearized
// mode along it and tests w(1) against zero.  The odd mode needs no test:
// u' solves the same linearized equation with u'(1) != 0.  The verdict is
// non-singular iff |w(1)| > 1e-4 * max|w|.
Diagnosis diagnose(const PolyNonlinearity& nl, const Exponent& e, Scalar alpha,
                   const DiagnosticsOptions& opts = {});

struct InvariantReport {
  Scalar alpha = 0;
  Scalar lambda = 0;
  Scalar x0 = 0;

  Scalar energy_drift = 0;      // max |E(x) - E(0)| / (1 + |E(0)|)
  Scalar q_at_x0 = 0;           // (p-1)(1-x0) phi(u') + phi'(u') u at x0
  Scalar z_at_x0 = 0;           // (1-x0) u'(x0) + u(x0)
  bool ineq_3_7_ok = false;     // u'(x0) - u'(x) < 0 on the grid in (x0, 1)
  Scalar G_at_x0 = 0;           // (p-1) w phi(u') - u w' phi'(u') at x0
  Scalar G_identity_residual = 0;
  Scalar T_identity_residual = 0;
  Scalar wronskian_spread = 0;
  Scalar wronskian_endpoint_residual = 0;
  Scalar u_dprime_at_x0 = 0;    // |lambda f(u(x0))| / phi'(u'(x0))
  Scalar w_at_1 = 0;
  bool positive_up_to_x0 = false;
  bool verdict_nonsingular = false;
  Scalar origin_exclusion = 0;  // quantities with phi'(u') use [this, 1]
};

// Evaluates the quantities entering the non-degeneracy analysis on the
// computed (profile, linearized) pair, with the parameter folded into the
// reaction term (g = lambda f).  Derivative identities are checked in
// integral form:
//   G(x0) - G(delta) = int_delta^x0 lambda (u f'(u) - (p-1) f(u)) w dx,
//   T(1) - T(x0)     = p int_x0^1 lambda f(u) w dx,
// with T(x) = x[(p-1) phi(u') w' + lambda f(u) w] - (p-1) phi(u') w and
// delta = 10 h0.  K(x) = phi'(u') u' w' + lambda f(u) w is constant along
// solutions, and u''(x0) = 0 reduces K to (p-1) phi(u'(x0)) w'(x0).
InvariantReport invariant_report(const PolyNonlinearity& nl, const Exponent& e,
                                 Scalar alpha,
                                 const DiagnosticsOptions& opts = {});

}  // namespace plbvp
