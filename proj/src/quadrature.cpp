#include "plbvp/quadrature.hpp"

namespace plbvp::detail {

namespace {

// Abscissae x = (1 + tanh((pi/2) sinh(v)))/2 at v = k h.  Beyond |v| ~ 6
// the distance to the endpoint underflows the normal double range.
constexpr Scalar kVMax = 6.0;

TanhSinhNode make_node(Scalar v, Scalar h) {
  const Scalar half_pi = 1.5707963267948966;
  const Scalar u = half_pi * std::sinh(v);
  const Scalar e2 = std::exp(-2 * u);
  const Scalar delta = e2 / (1 + e2);                    // (1 - tanh(u)) / 2
  const Scalar sech2 = 4 * e2 / ((1 + e2) * (1 + e2));   // sech^2(u)
  const Scalar weight = Scalar(0.5) * h * half_pi * std::cosh(v) * sech2;
  return {delta, weight};
}

}  // namespace

const std::vector<std::vector<TanhSinhNode>>& tanh_sinh_levels() {
  static const std::vector<std::vector<TanhSinhNode>> levels = [] {
    std::vector<std::vector<TanhSinhNode>> ls(kTanhSinhMaxLevel + 1);
    for (int level = 0; level <= kTanhSinhMaxLevel; ++level) {
      const Scalar h = std::ldexp(Scalar(1), -level);
      const long stride = level == 0 ? 1 : 2;
      const long start = level == 0 ? 1 : 1;
      for (long k = start;; k += stride) {
        const Scalar v = Scalar(k) * h;
        if (v > kVMax) break;
        const TanhSinhNode node = make_node(v, h);
        if (!(node.delta > 0) || !(node.weight > 0)) break;
        ls[level].push_back(node);
      }
    }
    return ls;
  }();
  return levels;
}

}  // namespace plbvp::detail
