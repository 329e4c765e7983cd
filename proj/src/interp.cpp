#include "gcurv/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gcurv {

CubicHermiteSpline::CubicHermiteSpline(std::span<const double> x, std::span<const double> y,
                                       std::span<const double> dy, bool monotone_limit)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()), m_(dy.begin(), dy.end()) {
  const std::size_t n = x_.size();
  if (n != y_.size() || n != m_.size()) throw std::invalid_argument("spline: size mismatch");
  if (n < 2) throw std::invalid_argument("spline: need at least two knots");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(x_[i] < x_[i + 1])) throw std::invalid_argument("spline: x not strictly increasing");

  if (!monotone_limit) return;
  auto clip = [](double m, double s_left, double s_right) {
    if (s_left * s_right <= 0.0) return 0.0;
    double lim = 3.0 * std::min(std::abs(s_left), std::abs(s_right));
    if (m * s_left <= 0.0) return 0.0;
    return std::abs(m) > lim ? std::copysign(lim, s_left) : m;
  };
  std::vector<double> s(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) s[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
  m_[0] = clip(m_[0], s[0], s[0]);
  for (std::size_t i = 1; i + 1 < n; ++i) m_[i] = clip(m_[i], s[i - 1], s[i]);
  m_[n - 1] = clip(m_[n - 1], s[n - 2], s[n - 2]);
}

std::size_t CubicHermiteSpline::segment(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) return 0;
  if (i >= x_.size()) return x_.size() - 2;
  return i - 1;
}

double CubicHermiteSpline::operator()(double x) const {
  std::size_t i = segment(x);
  double h = x_[i + 1] - x_[i];
  double t = (x - x_[i]) / h;
  double y0 = y_[i], y1 = y_[i + 1];
  double d0 = m_[i] * h, d1 = m_[i + 1] * h;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * d0 +
         (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * d1;
}

double CubicHermiteSpline::derivative(double x) const {
  std::size_t i = segment(x);
  double h = x_[i + 1] - x_[i];
  double t = (x - x_[i]) / h;
  double y0 = y_[i], y1 = y_[i + 1];
  double d0 = m_[i] * h, d1 = m_[i + 1] * h;
  double t2 = t * t;
  double dy = (6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * d0 +
              (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * d1;
  return dy / h;
}

}  // namespace gcurv
