#pragma once

#include "plbvp/types.hpp"

namespace plbvp {

// Cubic Hermite evaluation on [x0, x1] from endpoint values and slopes.
inline Scalar hermite_value(Scalar x0, Scalar x1, Scalar y0, Scalar y1,
                            Scalar d0, Scalar d1, Scalar x) {
  const Scalar h = x1 - x0;
  const Scalar t = (x - x0) / h;
  const Scalar t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

inline Scalar hermite_slope(Scalar x0, Scalar x1, Scalar y0, Scalar y1,
                            Scalar d0, Scalar d1, Scalar x) {
  const Scalar h = x1 - x0;
  const Scalar t = (x - x0) / h;
  const Scalar t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * d0 +
          (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * h * d1) /
         h;
}

// Shape-preserving cubic interpolant on a strictly increasing grid; node
// slopes follow Fritsch-Carlson (weighted harmonic means of the adjacent
// secants), so monotone data yields a monotone interpolant.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(Array x, Array y);

  Scalar operator()(Scalar x) const;
  Scalar derivative(Scalar x) const;

  const Array& grid() const { return x_; }
  const Array& values() const { return y_; }
  const Array& slopes() const { return m_; }

 private:
  Index cell(Scalar x) const;

  Array x_, y_, m_;
};

// Cubic Hermite interpolant with caller-supplied node slopes (used for
// quantities whose exact derivative is known along the grid).
class HermiteSeries {
 public:
  HermiteSeries() = default;
  HermiteSeries(Array x, Array y, Array slope);

  Scalar operator()(Scalar x) const;
  Scalar derivative(Scalar x) const;

 private:
  Index cell(Scalar x) const;

  Array x_, y_, m_;
};

}  // namespace plbvp
