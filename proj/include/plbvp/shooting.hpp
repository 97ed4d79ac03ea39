#pragma once

#include <optional>
#include <utility>

#include "plbvp/timemap.hpp"

namespace plbvp {

struct ShootOptions {
  Scalar rk_tol = 1e-10;  // mixed absolute + relative local tolerance
  Scalar h0 = 1e-4;       // series-startup offset from the degenerate origin
  Index n_grid = 1025;
  bool with_linearized = false;  // co-integrate the linearized pair
};

// Two-term local solution at x = h0 of the unit-parameter flux system
// u' = phi_inv(m), m' = -f(u) started from u(0) = alpha, m(0) = 0:
//   m(h0) = -f(alpha) h0,
//   u(h0) = alpha - ((p-1)/p) f(alpha)^{1/(p-1)} h0^{p/(p-1)};
// truncation error o(h0^q).  Requires f(alpha) > 0 and 0 < h0 <= 1e-4.
std::pair<Scalar, Scalar> startup_series(const PolyNonlinearity& nl,
                                         const Exponent& e, Scalar alpha,
                                         Scalar h0);

// Even-mode solution of the linearized equation along a stored profile:
// w(0) = 1, w' (0) = 0, flux n = phi'(u') w'.
struct LinearizedProfile {
  Array x;
  Array w;
  Array n;
  Scalar w_at_1 = 0;
  bool positive_up_to_x0 = true;
};

struct ShootResult {
  Scalar b = 0;       // first zero of the unit-parameter shot
  Scalar lambda = 0;  // b^p by the rescaling x -> x/b
  Profile profile;    // resampled onto [0, 1]
  std::optional<LinearizedProfile> linearized;
};

// Shoot-and-scale: integrate the unit-parameter initial-value problem from
// the series startup, localize the first zero b of u, and rescale onto
// [0, 1] with lambda = b^p.
ShootResult shoot_and_scale(const PolyNonlinearity& nl, const Exponent& e,
                            Scalar alpha, const ShootOptions& opts = {});

struct LinearizedOptions {
  Scalar rk_tol = 1e-10;
  Scalar h0 = 1e-4;
};

// Integrates n' = -lambda f'(u(x)) w, w' = n / phi'(u'(x)) along a stored
// profile, with u interpolated by monotone cubics and u' recovered from the
// energy identity.  Startup at h0 is truncation-matched to the u-series.
LinearizedProfile integrate_linearized_along(const PolyNonlinearity& nl,
                                             const Exponent& e,
                                             const Profile& profile,
                                             const LinearizedOptions& opts = {});

}  // namespace plbvp
