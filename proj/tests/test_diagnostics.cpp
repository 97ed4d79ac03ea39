#include <doctest.h>

#include <cmath>

#include "plbvp/diagnostics.hpp"

using namespace plbvp;

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

}  // namespace

TEST_CASE("diagnose flags the p = 2 eigenvalue case as singular") {
  const auto d = diagnose(pure_linear(0.5), Exponent(2.0), 1.0);
  CHECK(std::abs(d.point.w_at_1) <= 1e-6);
  CHECK_FALSE(d.verdict_nonsingular);
  CHECK(d.point.lambda == doctest::Approx(kPi * kPi / 4).epsilon(1e-9));
}

TEST_CASE("diagnose affine case: w(1) = -1/2, non-singular") {
  const auto d = diagnose(affine(), Exponent(2.0), 3.0);
  CHECK(d.point.w_at_1 == doctest::Approx(-0.5).epsilon(1e-5));
  CHECK(d.verdict_nonsingular);
}

TEST_CASE("diagnose the quartic example across amplitudes") {
  const auto nl = quartic_example();
  const Exponent e(3.0);
  for (Scalar alpha : {5.0, 6.0, 8.0}) {
    const auto d = diagnose(nl, e, alpha);
    CHECK(d.verdict_nonsingular);
    CHECK(d.point.uprime_at_1 < 0);
  }
}

TEST_CASE("diagnose rejects inadmissible amplitudes") {
  CHECK_THROWS_AS(diagnose(quartic_example(), Exponent(3.0), 3.0), DomainError);
}

TEST_CASE("invariant report for the affine closed form") {
  // u = 1 + 2 cos(2 pi x/3): x0 = 3/4, u'(x0) = -4 pi/3,
  // z(x0) = 1 - pi/3; q = z for p = 2 since phi' = 1.
  const auto rep = invariant_report(affine(), Exponent(2.0), 3.0);
  CHECK(rep.x0 == doctest::Approx(0.75).epsilon(1e-7));
  CHECK(rep.z_at_x0 == doctest::Approx(1.0 - kPi / 3).epsilon(1e-6));
  CHECK(rep.q_at_x0 == doctest::Approx(rep.z_at_x0).epsilon(1e-10));
  CHECK(rep.z_at_x0 < 0);
  CHECK(rep.q_at_x0 < 0);
  // x0 is the crossing with f(u(x0)) = 0
  CHECK(rep.u_dprime_at_x0 <= 1e-8);
  CHECK(rep.ineq_3_7_ok);
  CHECK(rep.verdict_nonsingular);
}

TEST_CASE("invariant report on the quartic example at alpha = 6") {
  const auto rep = invariant_report(quartic_example(), Exponent(3.0), 6.0);
  CHECK(rep.energy_drift <= 1e-8);
  CHECK(rep.q_at_x0 < 0);
  CHECK(rep.z_at_x0 < 0);
  CHECK(rep.ineq_3_7_ok);
  CHECK(rep.u_dprime_at_x0 <= 1e-6);
  CHECK(rep.wronskian_spread <= 1e-6);
  CHECK(rep.wronskian_endpoint_residual <= 1e-6);
  CHECK(rep.G_identity_residual <= 1e-6);
  CHECK(rep.T_identity_residual <= 1e-6);
  CHECK(rep.verdict_nonsingular);
  // the sign claim on G is conditional on w staying positive through the
  // crossing; here the even mode dips below zero just before x0
  if (rep.positive_up_to_x0) CHECK(rep.G_at_x0 > 0);
}

TEST_CASE("w positive through the crossing forces G(x0) > 0") {
  // near the curve endpoint the even mode stays positive past x0
  const auto nl = quartic_example();
  const Exponent e(3.0);
  for (Scalar alpha : {4.8, 5.0}) {
    const auto rep = invariant_report(nl, e, alpha);
    REQUIRE(rep.positive_up_to_x0);
    CHECK(rep.G_at_x0 > 0);
  }
}

TEST_CASE("identity residuals shrink under grid refinement") {
  const auto nl = quartic_example();
  const Exponent e(3.0);
  DiagnosticsOptions coarse;
  coarse.n_grid = 1025;
  DiagnosticsOptions fine;
  fine.n_grid = 2049;
  const auto rc = invariant_report(nl, e, 6.0, coarse);
  const auto rf = invariant_report(nl, e, 6.0, fine);
  CHECK(rf.G_identity_residual * 2 <= rc.G_identity_residual + 1e-14);
  CHECK(rf.T_identity_residual * 2 <= rc.T_identity_residual + 1e-14);
}

TEST_CASE("invariant report requires alpha above gamma") {
  CHECK_THROWS_AS(invariant_report(quartic_example(), Exponent(3.0), 3.0),
                  DomainError);
  CHECK_THROWS_AS(invariant_report(pure_linear(2.0), Exponent(2.0), 1.0),
                  DomainError);
}
