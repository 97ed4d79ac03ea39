#include "plbvp/nonlinearity.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "plbvp/errors.hpp"

namespace plbvp {

namespace {

Array differentiate(const Array& c) {
  if (c.size() <= 1) return Array::Zero(1);
  Array d(c.size() - 1);
  for (Index k = 1; k < c.size(); ++k) d[k - 1] = Scalar(k) * c[k];
  return d;
}

Array antidifferentiate(const Array& c) {
  Array F(c.size() + 1);
  F[0] = 0;
  for (Index k = 0; k < c.size(); ++k) F[k + 1] = c[k] / Scalar(k + 1);
  return F;
}

}  // namespace

Array taylor_shift(const Array& coeffs, Scalar shift) {
  Array b = coeffs;
  const Index n = b.size();
  for (Index j = 0; j + 1 < n; ++j)
    for (Index i = n - 2; i >= j; --i) b[i] += shift * b[i + 1];
  return b;
}

Index poly_degree(const Array& coeffs) {
  const Scalar cutoff =
      coeffs.abs().maxCoeff() * Scalar(1e-14);
  for (Index k = coeffs.size() - 1; k >= 0; --k)
    if (std::abs(coeffs[k]) > cutoff) return k;
  return 0;
}

std::vector<Scalar> poly_real_roots(const Array& coeffs, Scalar lo,
                                    Scalar hi) {
  std::vector<Scalar> roots;
  const Index deg = poly_degree(coeffs);
  if (deg < 1) return roots;
  if (deg == 1) {
    const Scalar r = -coeffs[0] / coeffs[1];
    if (r >= lo && r <= hi) roots.push_back(r);
    return roots;
  }

  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (Index i = 1; i < deg; ++i) companion(i, i - 1) = 1;
  for (Index i = 0; i < deg; ++i)
    companion(i, deg - 1) = -coeffs[i] / coeffs[deg];

  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto eig = solver.eigenvalues();

  const Array dcoeffs = differentiate(coeffs);
  const Scalar slack = Scalar(1e-10) * (1 + std::abs(hi));
  for (Index i = 0; i < eig.size(); ++i) {
    if (std::abs(eig[i].imag()) > Scalar(1e-8) * (1 + std::abs(eig[i].real())))
      continue;
    Scalar r = eig[i].real();
    for (int it = 0; it < 3; ++it) {
      const Scalar fp = horner(dcoeffs, r);
      if (fp == Scalar(0)) break;
      r -= horner(coeffs, r) / fp;
    }
    if (r < lo - slack || r > hi + slack) continue;
    r = std::clamp(r, lo, hi);
    bool dup = false;
    for (Scalar s : roots)
      if (std::abs(s - r) <= Scalar(1e-10) * (1 + std::abs(r))) dup = true;
    if (!dup) roots.push_back(r);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

PolyNonlinearity::PolyNonlinearity(Array coeffs, Scalar gamma)
    : coeffs_(std::move(coeffs)), gamma_(gamma) {
  if (coeffs_.size() == 0)
    throw DomainError("PolyNonlinearity: empty coefficient list");
  if (!(gamma > 0))
    throw DomainError("PolyNonlinearity: gamma must be > 0");
  dcoeffs_ = differentiate(coeffs_);
  Fcoeffs_ = antidifferentiate(coeffs_);
  coeff_scale_ = 1 + coeffs_.abs().maxCoeff();
  F_scale_ = 1 + Fcoeffs_.abs().maxCoeff();
  gamma_is_root_ =
      std::abs(horner(coeffs_, gamma_)) <= Scalar(1e-9) * coeff_scale_;
}

EnergyGap::EnergyGap(const PolyNonlinearity& nl, Scalar alpha)
    : alpha_(alpha), Fcoeffs_(nl.Fcoeffs()) {
  F_alpha_ = horner(Fcoeffs_, alpha);
  // F(alpha) - F(alpha - eps) = sum_{k>=1} (-1)^{k+1} b_k eps^k where the
  // b_k expand F about alpha.
  const Array b = taylor_shift(Fcoeffs_, alpha);
  gcoeffs_ = Array(b.size() - 1);
  for (Index k = 1; k < b.size(); ++k)
    gcoeffs_[k - 1] = (k % 2 == 1) ? b[k] : -b[k];
}

Scalar EnergyGap::ratio_at_depth(Scalar eps) const {
  Scalar acc = 0;
  for (Index i = gcoeffs_.size() - 1; i >= 0; --i)
    acc = acc * eps + gcoeffs_[i];
  return acc;
}

Scalar EnergyGap::at_depth(Scalar eps) const {
  return eps * ratio_at_depth(eps);
}

Scalar EnergyGap::at_u(Scalar u) const {
  const Scalar eps = alpha_ - u;
  if (eps <= Scalar(0.5) * alpha_) return at_depth(eps);
  return F_alpha_ - horner(Fcoeffs_, u);
}

namespace {

constexpr Index kHypothesisSamples = 10000;

struct ScanResult {
  Scalar min_value = std::numeric_limits<Scalar>::infinity();
  Scalar argmin = 0;
};

// Minimum of g over a uniform open sample of (lo, hi] or (lo, hi)
// augmented by the supplied interior points.
template <typename G>
ScanResult scan_minimum(G&& g, Scalar lo, Scalar hi, bool include_hi,
                        const std::vector<Scalar>& extra) {
  ScanResult r;
  const Index n = kHypothesisSamples;
  const Index last = include_hi ? n : n - 1;
  for (Index i = 1; i <= last; ++i) {
    const Scalar u = lo + (hi - lo) * Scalar(i) / Scalar(n);
    const Scalar v = g(u);
    if (v < r.min_value) {
      r.min_value = v;
      r.argmin = u;
    }
  }
  for (Scalar u : extra) {
    if (u <= lo || u >= hi) continue;
    const Scalar v = g(u);
    if (v < r.min_value) {
      r.min_value = v;
      r.argmin = u;
    }
  }
  return r;
}

std::vector<Scalar> roots_if_low_degree(const Array& coeffs, Scalar lo,
                                        Scalar hi) {
  if (poly_degree(coeffs) > 5) return {};
  return poly_real_roots(coeffs, lo, hi);
}

}  // namespace

HypothesisReport check_hypotheses(const PolyNonlinearity& nl,
                                  const Exponent& e, Scalar u_max) {
  const Scalar gamma = nl.gamma();
  if (!(u_max > gamma))
    throw DomainError("check_hypotheses: u_max must exceed gamma");

  HypothesisReport rep;
  rep.u_max = u_max;

  // h41: gamma is a root and f stays positive above it.
  {
    rep.h41_ok = nl.gamma_is_root();
    if (!rep.h41_ok)
      rep.witnesses.push_back({"h41", gamma, eval_f(nl, gamma)});
    const auto extrema = roots_if_low_degree(nl.dcoeffs(), gamma, u_max);
    const auto scan = scan_minimum([&](Scalar u) { return eval_f(nl, u); },
                                   gamma, u_max, true, extrema);
    if (!(scan.min_value > 0)) {
      rep.h41_ok = false;
      rep.witnesses.push_back({"h41", scan.argmin, scan.min_value});
    }
  }

  // h4a: u f'(u) - (p-1) f(u) > 0 above gamma.  The combination is itself a
  // polynomial with coefficients (k - (p-1)) a_k.
  {
    Array gpoly = nl.coeffs();
    for (Index k = 0; k < gpoly.size(); ++k)
      gpoly[k] *= Scalar(k) - (e.p() - 1);
    Array dg = Array::Zero(std::max<Index>(1, gpoly.size() - 1));
    for (Index k = 1; k < gpoly.size(); ++k) dg[k - 1] = Scalar(k) * gpoly[k];
    const auto extrema = roots_if_low_degree(dg, gamma, u_max);
    const auto scan = scan_minimum([&](Scalar u) { return horner(gpoly, u); },
                                   gamma, u_max, true, extrema);
    rep.h4a_ok = scan.min_value > 0;
    if (!rep.h4a_ok) rep.witnesses.push_back({"h4a", scan.argmin, scan.min_value});
  }

  // h42: F(u) - F(gamma) > 0 on (0, gamma); extrema of F sit at roots of f.
  {
    const Scalar F_gamma = eval_F(nl, gamma);
    const auto extrema = roots_if_low_degree(nl.coeffs(), Scalar(0), gamma);
    const auto scan =
        scan_minimum([&](Scalar u) { return eval_F(nl, u) - F_gamma; },
                     Scalar(0), gamma, false, extrema);
    rep.h42_ok = scan.min_value > 0;
    if (!rep.h42_ok) rep.witnesses.push_back({"h42", scan.argmin, scan.min_value});
  }

  return rep;
}

Scalar find_alpha_star(const PolyNonlinearity& nl, Scalar lo, Scalar hi) {
  if (!(hi > lo))
    throw DomainError("find_alpha_star: bracket must satisfy lo < hi");
  if (!(lo >= nl.gamma()))
    throw DomainError("find_alpha_star: bracket must lie above gamma");

  Scalar Flo = eval_F(nl, lo);
  Scalar Fhi = eval_F(nl, hi);
  if (Flo == 0) return lo;
  if (Fhi == 0) return hi;
  if ((Flo > 0) == (Fhi > 0))
    throw DomainError("find_alpha_star: F does not change sign on the bracket");

  Scalar neg = Flo < 0 ? lo : hi;
  Scalar pos = Flo < 0 ? hi : lo;
  for (int it = 0; it < 200; ++it) {
    const Scalar mid = Scalar(0.5) * (neg + pos);
    if (mid == neg || mid == pos) break;
    const Scalar Fm = eval_F(nl, mid);
    if (Fm < 0)
      neg = mid;
    else
      pos = mid;
    if (std::abs(pos - neg) <=
        4 * std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), std::abs(mid)))
      break;
  }
  // Downstream quadrature needs the gap F(alpha*) - F(u) nonnegative near
  // u = 0, so report the endpoint on the F >= 0 side.
  return pos;
}

}  // namespace plbvp
