#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "plbvp/nonlinearity.hpp"
#include "plbvp/plaplacian.hpp"
#include "plbvp/types.hpp"

namespace plbvp {

struct TimemapOptions {
  Scalar quad_rel_tol = 1e-10;   // tolerance of the full time-map integral
  Scalar profile_tol = 1e-10;    // tolerance of per-segment profile integrals
  Index tableau_floor = 2048;    // minimum graded-segment count per profile
};

struct Admissibility {
  bool admissible = false;
  Scalar margin = 0;          // min of F(alpha) - F(u) over the checked sample
  bool boundary_case = false; // F(alpha) ~ 0 with an integrable endpoint
  std::string reason;         // set when inadmissible
};

// A positive solution of amplitude alpha exists iff F(alpha) > F(u) on
// (0, alpha); equality is tolerated only at u = 0 and only when the local
// expansion of F keeps the time-map integrand integrable there.
Admissibility is_admissible(const PolyNonlinearity& nl, const Exponent& e,
                            Scalar alpha);

// I(alpha) = int_0^alpha [ q (F(alpha) - F(u)) ]^{-1/p} du with q = p/(p-1),
// computed after the substitution u = alpha - s^q which removes the
// upper-endpoint singularity exactly when f(alpha) > 0.
Scalar time_integral(const PolyNonlinearity& nl, const Exponent& e,
                     Scalar alpha, const TimemapOptions& opts = {});

// lambda(alpha) = I(alpha)^p.
Scalar lambda_of_alpha(const PolyNonlinearity& nl, const Exponent& e,
                       Scalar alpha, const TimemapOptions& opts = {});

// Central difference of lambda_of_alpha with step 1e-4 * alpha and one
// Richardson extrapolation.
Scalar dlambda_dalpha(const PolyNonlinearity& nl, const Exponent& e,
                      Scalar alpha, const TimemapOptions& opts = {});

// Boundary slope from the energy identity: u'(1) = -[q lambda F(alpha)]^{1/p}.
Scalar boundary_slope(const PolyNonlinearity& nl, const Exponent& e,
                      Scalar alpha, Scalar lambda);

struct Profile {
  Array x;        // uniform grid on [0, 1]
  Array u;        // u(0) = alpha, u(1) = 0, strictly decreasing
  Array uprime;   // <= 0
  Array m;        // m = phi(u'), m(0) = 0
  std::optional<Scalar> x0;  // u(x0) = gamma when alpha > gamma
  Scalar lambda = 0;

  Scalar alpha() const { return u.size() > 0 ? u[0] : 0; }
};

// Energy E(x) = ((p-1)/p)|u'|^p + lambda F(u) along the profile grid.
Array profile_energy(const PolyNonlinearity& nl, const Exponent& e,
                     const Profile& profile);

// Inverts the graded tableau x(u) of the time map onto a uniform x-grid by
// monotone cubic interpolation; u' and m are filled from the energy
// identity, and x0 is located by bisection on the monotone profile.
Profile reconstruct_profile(const PolyNonlinearity& nl, const Exponent& e,
                            Scalar alpha, Index n_grid,
                            const TimemapOptions& opts = {});

struct CurvePoint {
  Scalar alpha = 0;
  Scalar lambda = 0;
  Scalar dlambda_dalpha = std::numeric_limits<Scalar>::quiet_NaN();
  Scalar uprime_at_1 = 0;
  Scalar w_at_1 = std::numeric_limits<Scalar>::quiet_NaN();  // set by diagnostics
};

struct RejectedAmplitude {
  Scalar alpha = 0;
  Scalar margin = 0;
  std::string reason;
};

struct Curve {
  std::vector<CurvePoint> points;        // ordered by alpha
  std::vector<RejectedAmplitude> rejected;
  std::optional<Scalar> alpha_star;
  std::optional<Scalar> lambda0;
};

struct TraceOptions : TimemapOptions {
  int threads = 1;
  // Optional per-amplitude filler for CurvePoint::w_at_1 (e.g. the
  // linearized diagnostics); evaluated only at admissible amplitudes.
  std::function<Scalar(Scalar)> w_at_1_fn;
};

// Sweeps n_points amplitudes across [alpha_min, alpha_max]; inadmissible
// amplitudes are recorded, not fatal.  The admissibility boundary is
// located by bisection on the margin when the sweep straddles it, or below
// the window when the whole window is admissible; lambda0 = I(alpha_star)^p
// is filled when the boundary-case integral converges.
Curve trace_curve(const PolyNonlinearity& nl, const Exponent& e,
                  Scalar alpha_min, Scalar alpha_max, Index n_points,
                  const TraceOptions& opts = {});

}  // namespace plbvp
