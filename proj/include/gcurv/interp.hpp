#ifndef GCURV_INTERP_HPP
#define GCURV_INTERP_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace gcurv {

// Cubic Hermite interpolant on strictly increasing knots. Slopes come from
// the caller (for ODE output they are exact right-hand-side values, giving
// O(h^4) dense output). With `monotone_limit` the slopes are clipped to the
// Fritsch-Carlson region, so monotone data interpolates monotonically; exact
// slopes of a smooth monotone function are left untouched by the clip.
class CubicHermiteSpline {
 public:
  CubicHermiteSpline() = default;
  CubicHermiteSpline(std::span<const double> x, std::span<const double> y,
                     std::span<const double> dy, bool monotone_limit = false);

  double operator()(double x) const;
  double derivative(double x) const;

  double x_front() const { return x_.front(); }
  double x_back() const { return x_.back(); }
  bool empty() const { return x_.empty(); }

 private:
  std::size_t segment(double x) const;
  std::vector<double> x_, y_, m_;
};

}  // namespace gcurv

#endif
