#include "plbvp/interp.hpp"

#include <algorithm>
#include <cmath>

#include "plbvp/errors.hpp"

namespace plbvp {

namespace {

Index locate(const Array& x, Scalar v) {
  const Index n = x.size();
  const Scalar* begin = x.data();
  const Scalar* it = std::upper_bound(begin, begin + n, v);
  Index i = static_cast<Index>(it - begin) - 1;
  return std::clamp<Index>(i, 0, n - 2);
}

}  // namespace

MonotoneCubic::MonotoneCubic(Array x, Array y)
    : x_(std::move(x)), y_(std::move(y)) {
  const Index n = x_.size();
  if (n < 2 || y_.size() != n)
    throw DomainError("MonotoneCubic: need matching grids with >= 2 points");
  for (Index i = 0; i + 1 < n; ++i)
    if (!(x_[i + 1] > x_[i]))
      throw DomainError("MonotoneCubic: grid must be strictly increasing");

  Array h(n - 1), d(n - 1);
  for (Index i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    d[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  m_ = Array::Zero(n);
  for (Index i = 1; i + 1 < n; ++i) {
    if (d[i - 1] == 0 || d[i] == 0 || (d[i - 1] > 0) != (d[i] > 0)) {
      m_[i] = 0;
    } else {
      const Scalar w1 = 2 * h[i] + h[i - 1];
      const Scalar w2 = h[i] + 2 * h[i - 1];
      m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }

  // One-sided three-point endpoint slopes, clamped for shape preservation.
  auto end_slope = [](Scalar h0, Scalar h1, Scalar d0, Scalar d1) {
    Scalar m = ((2 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if ((m > 0) != (d0 > 0) || d0 == 0) m = 0;
    else if (std::abs(m) > 3 * std::abs(d0)) m = 3 * d0;
    return m;
  };
  if (n == 2) {
    m_[0] = m_[1] = d[0];
  } else {
    m_[0] = end_slope(h[0], h[1], d[0], d[1]);
    m_[n - 1] = end_slope(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  }
}

Index MonotoneCubic::cell(Scalar x) const { return locate(x_, x); }

Scalar MonotoneCubic::operator()(Scalar x) const {
  const Index i = cell(x);
  return hermite_value(x_[i], x_[i + 1], y_[i], y_[i + 1], m_[i], m_[i + 1], x);
}

Scalar MonotoneCubic::derivative(Scalar x) const {
  const Index i = cell(x);
  return hermite_slope(x_[i], x_[i + 1], y_[i], y_[i + 1], m_[i], m_[i + 1], x);
}

HermiteSeries::HermiteSeries(Array x, Array y, Array slope)
    : x_(std::move(x)), y_(std::move(y)), m_(std::move(slope)) {
  const Index n = x_.size();
  if (n < 2 || y_.size() != n || m_.size() != n)
    throw DomainError("HermiteSeries: need matching grids with >= 2 points");
}

Index HermiteSeries::cell(Scalar x) const { return locate(x_, x); }

Scalar HermiteSeries::operator()(Scalar x) const {
  const Index i = cell(x);
  return hermite_value(x_[i], x_[i + 1], y_[i], y_[i + 1], m_[i], m_[i + 1], x);
}

Scalar HermiteSeries::derivative(Scalar x) const {
  const Index i = cell(x);
  return hermite_slope(x_[i], x_[i + 1], y_[i], y_[i + 1], m_[i], m_[i + 1], x);
}

}  // namespace plbvp
