#pragma once

#include <cmath>
#include <string>

#include "plbvp/errors.hpp"
#include "plbvp/types.hpp"

namespace plbvp {

// Exponent p > 1 of the degenerate flux phi(t) = t|t|^{p-2}, together with
// the startup exponent q = p/(p-1) that governs local expansions at points
// where u' vanishes.
class Exponent {
 public:
  explicit Exponent(Scalar p) : p_(p), q_(p / (p - 1)) {
    if (!(p > Scalar(1)))
      throw DomainError("Exponent: p must be > 1, got " + std::to_string(p));
  }

  Scalar p() const { return p_; }
  Scalar q() const { return q_; }

 private:
  Scalar p_;
  Scalar q_;
};

// phi(t) = t|t|^{p-2}; odd, strictly increasing, phi(0) = 0.
inline Scalar phi(Scalar t, const Exponent& e) {
  if (t == Scalar(0)) return Scalar(0);
  return std::copysign(std::pow(std::abs(t), e.p() - 1), t);
}

// phi'(t) = (p-1)|t|^{p-2} >= 0.  At t = 0 the limit is 0 for p > 2 and 1
// for p = 2; for p < 2 it diverges and the call is rejected so that callers
// fall back on series startup.
inline Scalar phi_prime(Scalar t, const Exponent& e) {
  const Scalar p = e.p();
  if (t == Scalar(0)) {
    if (p > 2) return Scalar(0);
    if (p == 2) return Scalar(1);
    throw DomainError("phi_prime: divergent at t = 0 for p < 2");
  }
  return (p - 1) * std::pow(std::abs(t), p - 2);
}

// Inverse of phi: phi_inv(s) = sign(s)|s|^{1/(p-1)}.
inline Scalar phi_inv(Scalar s, const Exponent& e) {
  if (s == Scalar(0)) return Scalar(0);
  return std::copysign(std::pow(std::abs(s), Scalar(1) / (e.p() - 1)), s);
}

}  // namespace plbvp
