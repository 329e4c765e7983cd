#ifndef GCURV_PROFILE_HPP
#define GCURV_PROFILE_HPP

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gcurv/interp.hpp"
#include "gcurv/model.hpp"

namespace gcurv {

enum class ShotStatus {
  Converged,    // Lambda(r) settled over the trailing stabilization window
  MaxRadius,    // reached r_max with Lambda(r) still moving
  Diverged,     // cumulative curvature went negative and the solution turned up
  GrowthGuard,  // regularized shot exceeded u(0) + r^2 (wrong branch)
  StepFailure,  // step size underflow / non-finite state
};

std::string to_string(ShotStatus s);
ShotStatus shot_status_from_string(const std::string& s);

struct IntegratorControls {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double r_start = 1e-3;  // shrunk automatically when the series remainder demands it
  double r_max = 1e8;
  double u_floor = -60.0;
  double stabilization_window = 2.0;  // decades of r
  double stab_tol = 0.25;             // max variation of Lambda(r) over the window
  bool stop_on_stabilization = false; // stop as soon as the window test passes

  void validate() const;
};

/// One integrated radial shot: nodes (r, u, w = r u'(r)) at every accepted
/// step plus the running integrals vol(r) = 2pi Int e^{2u} s ds and
/// pw(r) = 2pi Int s^p e^{2u} s ds. Immutable after construction.
struct RadialProfile {
  CurvatureSpec spec;
  IntegratorControls controls;
  double u0 = 0.0;
  ShotStatus status = ShotStatus::StepFailure;

  std::vector<double> r, u, w, vol, pw;

  std::size_t size() const { return r.size(); }
  double r_front() const { return r.front(); }
  double r_back() const { return r.back(); }

  /// Local total curvature at node i: Lambda(r_i) = -2 pi w_i.
  double lam(std::size_t i) const { return -2.0 * kPi * w[i]; }
  double lam_back() const { return lam(size() - 1); }
};

/// Dense output over a profile: cubic interpolation in log r whose slopes are
/// the ODE right-hand side at the nodes (du/dt = w and so on). Reproduces
/// node values exactly; u is monotone-limited, so a monotone profile
/// interpolates monotonically.
class ProfileSampler {
 public:
  explicit ProfileSampler(const RadialProfile& profile);

  double u(double r) const;
  double w(double r) const;
  double vol(double r) const;
  double pw(double r) const;
  double lam(double r) const { return -2.0 * kPi * w(r); }

  double r_min() const { return r_min_; }
  double r_max() const { return r_max_; }

 private:
  double clamp_log(double r) const;  // throws std::out_of_range
  double r_min_, r_max_;
  CubicHermiteSpline u_, w_, vol_, pw_;
};

}  // namespace gcurv

#endif
