#pragma once

#include <cmath>
#include <limits>
#include <type_traits>
#include <vector>

#include "plbvp/errors.hpp"
#include "plbvp/types.hpp"

namespace plbvp {

struct QuadratureResult {
  Scalar value = 0;
  Scalar est_error = 0;  // change between the last two refinement levels
  int levels_used = 1;
};

namespace detail {

// One positive-side tanh-sinh abscissa stored by its distance to the
// nearer endpoint of (0,1); the mirrored node shares the weight.
struct TanhSinhNode {
  Scalar delta;
  Scalar weight;
};

constexpr int kTanhSinhMaxLevel = 12;
constexpr Scalar kTanhSinhCenterWeight = 0.7853981633974483;  // pi/4

// levels[0] holds the k >= 1 nodes for step h = 1, levels[L] the new (odd)
// nodes for h = 2^-L.  Built once, read-only afterwards.
const std::vector<std::vector<TanhSinhNode>>& tanh_sinh_levels();

template <typename F>
Scalar eval_integrand(F& g, Scalar x, Scalar one_minus_x) {
  Scalar v;
  if constexpr (std::is_invocable_v<F&, Scalar, Scalar>)
    v = g(x, one_minus_x);
  else
    v = g(x);
  if (!std::isfinite(v))
    throw DomainError("integrate_singular: non-finite integrand value near x = " +
                      std::to_string(x));
  return v;
}

}  // namespace detail

// Tanh-sinh quadrature of g over (0,1).  Endpoint singularities of power
// type weaker than first order are absorbed by the transformation.  The
// node count doubles per level until the successive-level change drops
// below rel_tol or the level cap is reached.
//
// g may be invocable as g(x) or as g(x, 1-x); the two-argument form
// receives the distance to the right endpoint at full precision, which
// right-singular integrands need.
template <typename F>
QuadratureResult integrate_singular(F&& g, Scalar rel_tol = Scalar(1e-10)) {
  const auto& levels = detail::tanh_sinh_levels();

  Scalar sum = detail::kTanhSinhCenterWeight *
               detail::eval_integrand(g, Scalar(0.5), Scalar(0.5));
  for (const auto& node : levels[0])
    sum += node.weight * (detail::eval_integrand(g, node.delta, 1 - node.delta) +
                          detail::eval_integrand(g, 1 - node.delta, node.delta));

  Scalar prev = sum;
  Scalar est = std::numeric_limits<Scalar>::infinity();
  for (int level = 1; level <= detail::kTanhSinhMaxLevel; ++level) {
    Scalar add = 0;
    for (const auto& node : levels[level])
      add += node.weight * (detail::eval_integrand(g, node.delta, 1 - node.delta) +
                            detail::eval_integrand(g, 1 - node.delta, node.delta));
    const Scalar cur = Scalar(0.5) * prev + add;
    est = std::abs(cur - prev);
    const Scalar magnitude = std::max(std::abs(cur), std::abs(prev));
    prev = cur;
    if (level >= 2 && est <= rel_tol * magnitude)
      return {cur, est, level + 1};
  }

  const Scalar magnitude = std::abs(prev);
  if (est <= 10 * rel_tol * magnitude)
    return {prev, est, detail::kTanhSinhMaxLevel + 1};
  throw DomainError("integrate_singular: no convergence at level cap (change " +
                    std::to_string(est) + ")");
}

}  // namespace plbvp
