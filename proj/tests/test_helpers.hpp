#ifndef GCURV_TEST_HELPERS_HPP
#define GCURV_TEST_HELPERS_HPP

#include <cmath>
#include <functional>
#include <vector>

#include "gcurv/profile.hpp"

namespace gcurv::testing {

/// Synthetic profile from closed-form u(r), w(r) on a log grid (vol/pw zero).
inline RadialProfile make_profile(const CurvatureSpec& spec, double u0,
                                  const std::function<double(double)>& u_of_r,
                                  const std::function<double(double)>& w_of_r, double r_lo,
                                  double r_hi, std::size_t n,
                                  ShotStatus status = ShotStatus::Converged) {
  RadialProfile profile;
  profile.spec = spec;
  profile.u0 = u0;
  profile.status = status;
  double t_lo = std::log(r_lo), t_hi = std::log(r_hi);
  for (std::size_t i = 0; i < n; ++i) {
    double r = std::exp(t_lo + (t_hi - t_lo) * i / (n - 1));
    profile.r.push_back(r);
    profile.u.push_back(u_of_r(r));
    profile.w.push_back(w_of_r(r));
    profile.vol.push_back(0.0);
    profile.pw.push_back(0.0);
  }
  return profile;
}

}  // namespace gcurv::testing

#endif
