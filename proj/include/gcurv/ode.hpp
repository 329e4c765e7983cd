#ifndef GCURV_ODE_HPP
#define GCURV_ODE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace gcurv {

// Embedded Dormand-Prince 5(4) pair with PI step-size control (Hairer-Wanner
// coefficients, FSAL). The acceptance test is error-per-unit-step: a step of
// size h passes when the scaled embedded error estimate is <= h, so the
// accumulated error scales linearly with the tolerances.
template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N, class Rhs>
class Dopri5 {
 public:
  Dopri5(Rhs rhs, double rel_tol, double abs_tol, double h_max = 0.25)
      : rhs_(rhs), rtol_(rel_tol), atol_(abs_tol), h_max_(h_max) {}

  void reset(double t, const OdeState<N>& y) {
    rhs_(t, y, k1_);
    have_k1_ = true;
    err_old_ = 1e-4;
  }

  // Attempts one step of size h from (t, y). On acceptance advances t and y
  // in place and returns true. Either way h is replaced by the proposed next
  // (or retry) step size.
  bool try_step(double& t, OdeState<N>& y, double& h) {
    if (!have_k1_) reset(t, y);

    OdeState<N> yt;
    auto stage = [&](const std::array<double, 6>& a, double c, OdeState<N>& k) {
      for (std::size_t i = 0; i < N; ++i) {
        double acc = a[0] * k1_[i] + a[1] * k2_[i] + a[2] * k3_[i] +
                     a[3] * k4_[i] + a[4] * k5_[i] + a[5] * k6_[i];
        yt[i] = y[i] + h * acc;
      }
      rhs_(t + c * h, yt, k);
    };

    stage({1.0 / 5, 0, 0, 0, 0, 0}, 1.0 / 5, k2_);
    stage({3.0 / 40, 9.0 / 40, 0, 0, 0, 0}, 3.0 / 10, k3_);
    stage({44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0}, 4.0 / 5, k4_);
    stage({19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
          8.0 / 9, k5_);
    stage({9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176,
           -5103.0 / 18656, 0},
          1.0, k6_);

    // 5th-order solution (also the last stage location, FSAL).
    OdeState<N> y5;
    for (std::size_t i = 0; i < N; ++i) {
      y5[i] = y[i] + h * (35.0 / 384 * k1_[i] + 500.0 / 1113 * k3_[i] +
                          125.0 / 192 * k4_[i] - 2187.0 / 6784 * k5_[i] +
                          11.0 / 84 * k6_[i]);
    }
    OdeState<N> k7;
    rhs_(t + h, y5, k7);

    double err_sq = 0.0;
    bool finite = true;
    for (std::size_t i = 0; i < N; ++i) {
      double e = h * (71.0 / 57600 * k1_[i] - 71.0 / 16695 * k3_[i] +
                      71.0 / 1920 * k4_[i] - 17253.0 / 339200 * k5_[i] +
                      22.0 / 525 * k6_[i] - 1.0 / 40 * k7[i]);
      double sc = atol_ + rtol_ * std::max(std::abs(y[i]), std::abs(y5[i]));
      if (!std::isfinite(e) || !std::isfinite(y5[i])) finite = false;
      err_sq += (e / sc) * (e / sc);
    }
    double err = std::sqrt(err_sq / static_cast<double>(N));
    double q = finite ? err / h : 1e10;  // per-unit-step error ratio

    if (q <= 1.0) {
      // PI controller (beta = 0.075 stabilization term).
      double fac = 0.9 * std::pow(std::max(q, 1e-10), -0.175) *
                   std::pow(err_old_, 0.075);
      err_old_ = std::max(q, 1e-10);
      t += h;
      y = y5;
      k1_ = k7;
      h = std::min(h * std::clamp(fac, 0.2, 2.0), h_max_);
      return true;
    }
    double fac = 0.9 * std::pow(q, -0.25);
    h *= std::clamp(fac, 0.1, 0.9);
    return false;
  }

 private:
  Rhs rhs_;
  double rtol_, atol_;
  double err_old_ = 1e-4;
  bool have_k1_ = false;
  OdeState<N> k1_{}, k2_{}, k3_{}, k4_{}, k5_{}, k6_{};
  double h_max_ = 0.25;
};

}  // namespace gcurv

#endif
