#include "plbvp/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "plbvp/errors.hpp"
#include "plbvp/interp.hpp"

namespace plbvp {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr Scalar c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr Scalar a21 = 1.0 / 5;
constexpr Scalar a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr Scalar a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr Scalar a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr Scalar a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr Scalar b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr Scalar e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

Scalar event_position(const OdeStep& a, const OdeStep& b, Index comp) {
  Scalar lo = a.x, hi = b.x;
  // a is strictly positive, the Hermite at b is <= 0
  for (int it = 0; it < 200 && hi - lo > Scalar(1e-12); ++it) {
    const Scalar mid = Scalar(0.5) * (lo + hi);
    const Scalar v = hermite_value(a.x, b.x, a.y[comp], b.y[comp], a.dy[comp],
                                   b.dy[comp], mid);
    if (v > 0)
      lo = mid;
    else
      hi = mid;
  }
  return Scalar(0.5) * (lo + hi);
}

}  // namespace

Vector OdeSolution::at(Scalar x) const {
  const auto cmp = [](const OdeStep& s, Scalar v) { return s.x < v; };
  auto it = std::lower_bound(steps_.begin(), steps_.end(), x, cmp);
  if (it == steps_.begin()) ++it;
  if (it == steps_.end()) --it;
  const OdeStep& hi = *it;
  const OdeStep& lo = *(it - 1);
  Vector out(lo.y.size());
  for (Index i = 0; i < out.size(); ++i)
    out[i] = hermite_value(lo.x, hi.x, lo.y[i], hi.y[i], lo.dy[i], hi.dy[i], x);
  return out;
}

Scalar OdeSolution::component_at(Scalar x, Index i) const {
  const auto cmp = [](const OdeStep& s, Scalar v) { return s.x < v; };
  auto it = std::lower_bound(steps_.begin(), steps_.end(), x, cmp);
  if (it == steps_.begin()) ++it;
  if (it == steps_.end()) --it;
  const OdeStep& hi = *it;
  const OdeStep& lo = *(it - 1);
  return hermite_value(lo.x, hi.x, lo.y[i], hi.y[i], lo.dy[i], hi.dy[i], x);
}

RungeKutta54::RungeKutta54(Rhs rhs, OdeOptions opts)
    : rhs_(std::move(rhs)), opts_(opts) {}

RungeKutta54::StepOutcome RungeKutta54::try_step(Scalar x, const Vector& y,
                                                 const Vector& k1, Scalar h,
                                                 Vector& y_new,
                                                 Vector& k_new) const {
  const Index n = y.size();
  Vector k2(n), k3(n), k4(n), k5(n), k6(n), tmp(n);

  tmp = y + h * (a21 * k1);
  rhs_(x + c2 * h, tmp, k2);
  tmp = y + h * (a31 * k1 + a32 * k2);
  rhs_(x + c3 * h, tmp, k3);
  tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
  rhs_(x + c4 * h, tmp, k4);
  tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
  rhs_(x + c5 * h, tmp, k5);
  tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
  rhs_(x + h, tmp, k6);

  y_new = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  rhs_(x + h, y_new, k_new);  // FSAL stage

  Scalar err2 = 0;
  for (Index i = 0; i < n; ++i) {
    const Scalar ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                           e6 * k6[i] + e7 * k_new[i]);
    const Scalar sc =
        opts_.abs_tol +
        opts_.rel_tol * std::max(std::abs(y[i]), std::abs(y_new[i]));
    err2 += (ei / sc) * (ei / sc);
  }
  const Scalar err = std::sqrt(err2 / Scalar(n));

  Scalar fac = Scalar(0.9) * std::pow(std::max(err, Scalar(1e-30)), Scalar(-0.2));
  if (err <= 1) {
    fac = std::min(fac, Scalar(5));
    return {true, x + h, std::min(h * fac, opts_.max_step)};
  }
  fac = std::max(fac, Scalar(0.2));
  return {false, x, h * std::min(fac, Scalar(1))};
}

OdeSolution RungeKutta54::integrate_to(Scalar x0, const Vector& y0,
                                       Scalar x_end) const {
  if (!(x_end > x0)) throw DomainError("integrate_to: x_end must exceed x0");

  OdeSolution sol;
  Vector y = y0, k1(y0.size()), y_new(y0.size()), k_new(y0.size());
  rhs_(x0, y, k1);
  sol.steps_.push_back({x0, y, k1});

  Scalar x = x0;
  Scalar h = opts_.initial_step > 0 ? opts_.initial_step
                                    : Scalar(1e-2) * (x_end - x0);
  h = std::min(h, opts_.max_step);

  for (long n = 0; n < opts_.max_steps; ++n) {
    bool last = false;
    if (x + h >= x_end) {
      h = x_end - x;
      last = true;
    }
    if (h <= 4 * std::numeric_limits<Scalar>::epsilon() * std::max(std::abs(x), Scalar(1)))
      throw DomainError("integrate_to: step size underflow at x = " +
                        std::to_string(x));
    const auto out = try_step(x, y, k1, h, y_new, k_new);
    if (out.accepted) {
      x = last ? x_end : out.x_new;
      y.swap(y_new);
      k1.swap(k_new);
      sol.steps_.push_back({x, y, k1});
      if (x >= x_end) return sol;
    }
    h = out.h_next;
  }
  throw DomainError("integrate_to: step limit exceeded");
}

RungeKutta54::EventResult RungeKutta54::integrate_until_zero(
    Scalar x0, const Vector& y0, Index component, Scalar x_cap) const {
  if (!(y0[component] > 0))
    throw DomainError("integrate_until_zero: event component must start > 0");

  OdeSolution sol;
  Vector y = y0, k1(y0.size()), y_new(y0.size()), k_new(y0.size());
  rhs_(x0, y, k1);
  sol.steps_.push_back({x0, y, k1});

  Scalar x = x0;
  Scalar h = opts_.initial_step > 0 ? opts_.initial_step
                                    : Scalar(1e-2) * (x_cap - x0);
  h = std::min(h, opts_.max_step);

  for (long n = 0; n < opts_.max_steps; ++n) {
    if (x > x_cap)
      throw DomainError(
          "integrate_until_zero: no zero crossing before x = " +
          std::to_string(x_cap) + " (amplitude appears inadmissible)");
    if (h <= 4 * std::numeric_limits<Scalar>::epsilon() * std::max(std::abs(x), Scalar(1)))
      throw DomainError("integrate_until_zero: step size underflow at x = " +
                        std::to_string(x));
    const auto out = try_step(x, y, k1, h, y_new, k_new);
    if (out.accepted) {
      x = out.x_new;
      y.swap(y_new);
      k1.swap(k_new);
      sol.steps_.push_back({x, y, k1});
      if (y[component] <= 0) {
        const auto& b = sol.steps_.back();
        const auto& a = sol.steps_[sol.steps_.size() - 2];
        EventResult res;
        res.x_event = event_position(a, b, component);
        res.y_event = Vector(y.size());
        for (Index i = 0; i < y.size(); ++i)
          res.y_event[i] = hermite_value(a.x, b.x, a.y[i], b.y[i], a.dy[i],
                                         b.dy[i], res.x_event);
        res.solution = std::move(sol);
        return res;
      }
    }
    h = out.h_next;
  }
  throw DomainError("integrate_until_zero: step limit exceeded");
}

}  // namespace plbvp
