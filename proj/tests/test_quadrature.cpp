#include <doctest.h>

#include <cmath>

#include "plbvp/quadrature.hpp"

using namespace plbvp;

TEST_CASE("constant integrand") {
  const auto res = integrate_singular([](Scalar) { return 1.0; }, 1e-14);
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(res.est_error < 1e-14);
  CHECK(res.levels_used >= 1);
}

TEST_CASE("left-endpoint inverse square root") {
  // int_0^1 s^{-1/2}/2 ds = 1
  const auto res =
      integrate_singular([](Scalar s) { return 0.5 / std::sqrt(s); });
  CHECK(res.value == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("arcsine integrand, right-endpoint singular") {
  // int_0^1 ds / sqrt(1 - s^2) = pi/2; the distance to the right endpoint
  // arrives through the second argument.
  const auto res = integrate_singular(
      [](Scalar s, Scalar one_minus_s) {
        return 1.0 / std::sqrt(one_minus_s * (1 + s));
      });
  CHECK(res.value == doctest::Approx(1.5707963267948966).epsilon(1e-10));
}

TEST_CASE("smooth polynomial and linearity") {
  auto g = [](Scalar s) { return s * s * (1 - s) + 0.25; };
  const auto base = integrate_singular(g);
  CHECK(base.value == doctest::Approx(1.0 / 3 - 1.0 / 4 + 0.25).epsilon(1e-12));

  const Scalar a = 3.0;
  const auto scaled = integrate_singular([&](Scalar s) { return a * g(s); });
  CHECK(scaled.value ==
        doctest::Approx(a * base.value).epsilon(1e-12));
}

TEST_CASE("non-finite integrand is rejected") {
  CHECK_THROWS_AS(integrate_singular([](Scalar s) {
                    return s < 0.5 ? std::numeric_limits<Scalar>::quiet_NaN()
                                   : 1.0;
                  }),
                  DomainError);
}

TEST_CASE("non-integrable singularity fails to converge") {
  CHECK_THROWS_AS(integrate_singular([](Scalar s) { return 1.0 / s; }),
                  DomainError);
}

TEST_CASE("result fields are sane") {
  const auto res = integrate_singular([](Scalar s) { return std::exp(s); });
  CHECK(res.value == doctest::Approx(std::exp(1.0) - 1).epsilon(1e-12));
  CHECK(res.est_error >= 0);
  CHECK(res.levels_used >= 1);
  CHECK(res.levels_used <= 13);
}
