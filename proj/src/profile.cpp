#include "gcurv/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gcurv {

std::string to_string(ShotStatus s) {
  switch (s) {
    case ShotStatus::Converged: return "converged";
    case ShotStatus::MaxRadius: return "max_radius";
    case ShotStatus::Diverged: return "diverged";
    case ShotStatus::GrowthGuard: return "growth_guard";
    case ShotStatus::StepFailure: return "step_failure";
  }
  throw std::logic_error("unknown ShotStatus");
}

ShotStatus shot_status_from_string(const std::string& s) {
  if (s == "converged") return ShotStatus::Converged;
  if (s == "max_radius") return ShotStatus::MaxRadius;
  if (s == "diverged") return ShotStatus::Diverged;
  if (s == "growth_guard") return ShotStatus::GrowthGuard;
  if (s == "step_failure") return ShotStatus::StepFailure;
  throw std::invalid_argument("unknown shot status: " + s);
}

void IntegratorControls::validate() const {
  if (!(rel_tol > 0) || !(abs_tol > 0))
    throw std::invalid_argument("integrator tolerances must be positive");
  if (!(r_start > 0) || !(r_start < 1) || !(r_max > 1))
    throw std::invalid_argument("integrator requires r_start < 1 < r_max");
  if (!(stabilization_window > 0) || !(stab_tol > 0))
    throw std::invalid_argument("stabilization controls must be positive");
  if (!std::isfinite(u_floor)) throw std::invalid_argument("u_floor must be finite");
}

ProfileSampler::ProfileSampler(const RadialProfile& profile) {
  const std::size_t n = profile.size();
  if (n < 2) throw std::invalid_argument("profile too short to sample");
  r_min_ = profile.r.front();
  r_max_ = profile.r.back();

  const CurvatureSpec& spec = profile.spec;
  const bool regularized = spec.kind == CurvatureKind::RegularizedPower;
  const bool power = spec.has_power_weight();
  std::vector<double> t(n), dw(n), dvol(n), dpw(n);
  for (std::size_t i = 0; i < n; ++i) {
    double r = profile.r[i];
    t[i] = std::log(r);
    double e2u = std::exp(std::min(2.0 * profile.u[i], 600.0));
    double ke2u;
    if (regularized) {
      double expo = std::min(2.0 * profile.u[i] - r * r, 600.0);
      ke2u = (spec.lambda - std::pow(r, spec.p)) * std::exp(expo);
    } else {
      ke2u = eval_curvature(spec, r) * e2u;
    }
    double r2 = r * r;
    dw[i] = -r2 * ke2u;
    dvol[i] = 2.0 * kPi * r2 * e2u;
    dpw[i] = power ? 2.0 * kPi * r2 * std::pow(r, spec.p) * e2u : 0.0;
  }
  u_ = CubicHermiteSpline(t, profile.u, profile.w, /*monotone_limit=*/true);
  w_ = CubicHermiteSpline(t, profile.w, dw);
  vol_ = CubicHermiteSpline(t, profile.vol, dvol);
  pw_ = CubicHermiteSpline(t, profile.pw, dpw);
}

double ProfileSampler::clamp_log(double r) const {
  // Tolerate a few ulp of rounding at the ends of the range.
  if (!(r >= r_min_ * (1.0 - 1e-12)) || !(r <= r_max_ * (1.0 + 1e-12)))
    throw std::out_of_range("radius outside profile range");
  double t = std::log(r);
  return std::clamp(t, u_.x_front(), u_.x_back());
}

double ProfileSampler::u(double r) const { return u_(clamp_log(r)); }
double ProfileSampler::w(double r) const { return w_(clamp_log(r)); }
double ProfileSampler::vol(double r) const { return vol_(clamp_log(r)); }
double ProfileSampler::pw(double r) const { return pw_(clamp_log(r)); }

}  // namespace gcurv
