#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "plbvp/types.hpp"

namespace plbvp {

struct OdeOptions {
  Scalar rel_tol = 1e-10;
  Scalar abs_tol = 1e-10;
  Scalar max_step = std::numeric_limits<Scalar>::infinity();
  Scalar initial_step = 0;  // 0: 1e-2 of the integration span
  long max_steps = 2000000;
};

struct OdeStep {
  Scalar x;
  Vector y;
  Vector dy;
};

// Accepted-step history with cubic Hermite evaluation inside steps.
class OdeSolution {
 public:
  const std::vector<OdeStep>& steps() const { return steps_; }
  Scalar x_begin() const { return steps_.front().x; }
  Scalar x_end() const { return steps_.back().x; }

  Vector at(Scalar x) const;
  Scalar component_at(Scalar x, Index i) const;

 private:
  friend class RungeKutta54;
  std::vector<OdeStep> steps_;
};

// Dormand-Prince 5(4) embedded pair with a standard step controller.
class RungeKutta54 {
 public:
  using Rhs = std::function<void(Scalar, const Vector&, Vector&)>;

  RungeKutta54(Rhs rhs, OdeOptions opts = {});

  // Integrate from (x0, y0) to x_end > x0.
  OdeSolution integrate_to(Scalar x0, const Vector& y0, Scalar x_end) const;

  struct EventResult {
    OdeSolution solution;
    Scalar x_event;
    Vector y_event;
  };

  // Integrate until y[component] first crosses zero from above; the
  // crossing is localized by bisection on the in-step cubic Hermite to an
  // x-width of 1e-12.  Throws if x_cap is reached without a crossing.
  EventResult integrate_until_zero(Scalar x0, const Vector& y0,
                                   Index component, Scalar x_cap) const;

 private:
  struct StepOutcome {
    bool accepted;
    Scalar x_new;
    Scalar h_next;
  };

  StepOutcome try_step(Scalar x, const Vector& y, const Vector& k1, Scalar h,
                       Vector& y_new, Vector& k_new) const;

  Rhs rhs_;
  OdeOptions opts_;
};

}  // namespace plbvp
