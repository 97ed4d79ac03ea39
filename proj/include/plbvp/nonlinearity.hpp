#pragma once

#include <string>
#include <vector>

#include "plbvp/plaplacian.hpp"
#include "plbvp/types.hpp"

namespace plbvp {

// Horner evaluation of a polynomial given by ascending coefficients.
inline Scalar horner(const Array& coeffs, Scalar u) {
  Scalar acc = 0;
  for (Index i = coeffs.size() - 1; i >= 0; --i) acc = acc * u + coeffs[i];
  return acc;
}

// Coefficients of P(x + shift) from those of P(x) (repeated synthetic
// division).
Array taylor_shift(const Array& coeffs, Scalar shift);

// Effective degree (trailing coefficients that vanish relative to the
// largest one are ignored).
Index poly_degree(const Array& coeffs);

// Real roots inside [lo, hi], found as eigenvalues of the companion matrix
// and polished by Newton steps.
std::vector<Scalar> poly_real_roots(const Array& coeffs, Scalar lo, Scalar hi);

// Polynomial reaction term f (ascending coefficients) with exact derivative
// f', exact antiderivative F(u) = int_0^u f (so F(0) = 0), and the
// designated sign-change point gamma > 0.
class PolyNonlinearity {
 public:
  PolyNonlinearity(Array coeffs, Scalar gamma);

  const Array& coeffs() const { return coeffs_; }
  const Array& dcoeffs() const { return dcoeffs_; }
  const Array& Fcoeffs() const { return Fcoeffs_; }
  Scalar gamma() const { return gamma_; }

  Scalar coeff_scale() const { return coeff_scale_; }  // 1 + max|coeffs|
  Scalar F_scale() const { return F_scale_; }          // 1 + max|Fcoeffs|
  bool gamma_is_root() const { return gamma_is_root_; }

 private:
  Array coeffs_, dcoeffs_, Fcoeffs_;
  Scalar gamma_;
  Scalar coeff_scale_, F_scale_;
  bool gamma_is_root_;
};

inline Scalar eval_f(const PolyNonlinearity& nl, Scalar u) {
  return horner(nl.coeffs(), u);
}
inline Scalar eval_fprime(const PolyNonlinearity& nl, Scalar u) {
  return horner(nl.dcoeffs(), u);
}
inline Scalar eval_F(const PolyNonlinearity& nl, Scalar u) {
  return horner(nl.Fcoeffs(), u);
}

// Cancellation-free evaluation of the potential-energy gap
// F(alpha) - F(u) for a fixed amplitude alpha.  Near u = alpha the gap is
// evaluated as a Taylor polynomial in the depth eps = alpha - u; near u = 0
// it is F(alpha) - F(u) directly.  ratio_at_depth returns the gap divided
// by the depth, which stays bounded and positive down to eps = 0 whenever
// f(alpha) > 0.
class EnergyGap {
 public:
  EnergyGap(const PolyNonlinearity& nl, Scalar alpha);

  Scalar alpha() const { return alpha_; }
  Scalar F_alpha() const { return F_alpha_; }

  Scalar at_depth(Scalar eps) const;       // F(alpha) - F(alpha - eps)
  Scalar ratio_at_depth(Scalar eps) const; // at_depth(eps) / eps
  Scalar at_u(Scalar u) const;             // F(alpha) - F(u)

 private:
  Scalar alpha_, F_alpha_;
  Array gcoeffs_;  // at_depth(eps) = sum_k gcoeffs_[k-1] eps^k
  Array Fcoeffs_;
};

struct HypothesisWitness {
  std::string condition;  // "h41" | "h4a" | "h42"
  Scalar u;
  Scalar margin;
};

struct HypothesisReport {
  bool h41_ok = false;
  bool h4a_ok = false;
  bool h42_ok = false;
  Scalar u_max = 0;
  std::vector<HypothesisWitness> witnesses;

  bool all_ok() const { return h41_ok && h4a_ok && h42_ok; }
};

// Sampled verification of the structure conditions on f:
//   h41: f(gamma) = 0 (within a scale-aware tolerance) and f > 0 on
//        (gamma, u_max];
//   h4a: u f'(u) - (p-1) f(u) > 0 on (gamma, u_max];
//   h42: F(u) > F(gamma) on (0, gamma).
// Each interval is scanned on a dense uniform sample augmented by the real
// roots of the relevant derivative polynomial (degree <= 5).  This is a
// check, not a proof.
HypothesisReport check_hypotheses(const PolyNonlinearity& nl,
                                  const Exponent& e, Scalar u_max);

// Root of F inside a bracket contained in (gamma, inf), located by
// bisection to machine width; the returned endpoint lies on the F >= 0
// side.  Throws if F does not change sign on the bracket.
Scalar find_alpha_star(const PolyNonlinearity& nl, Scalar lo, Scalar hi);

}  // namespace plbvp
