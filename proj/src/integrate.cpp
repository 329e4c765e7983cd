#include "gcurv/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gcurv/ode.hpp"

namespace gcurv {

namespace {

// Coefficient of the leading neglected term (r^4 scale) of the series start.
double series_remainder_coeff(const CurvatureSpec& spec, double u0) {
  double k0 = std::abs(spec.at_origin());
  double e2u0 = std::exp(2.0 * u0);
  double c4 = (k0 * e2u0) * (k0 * e2u0) / 32.0;
  if (spec.kind == CurvatureKind::RegularizedPower) c4 += spec.lambda * e2u0 / 16.0;
  return c4;
}

}  // namespace

double series_radius(const CurvatureSpec& spec, double u0, double abs_tol) {
  double c4 = series_remainder_coeff(spec, u0);
  if (c4 <= 0.0) return 1e-2;
  return std::pow(abs_tol / (4.0 * c4), 0.25);
}

std::pair<double, double> series_start(const CurvatureSpec& spec, double u0, double r0,
                                       double abs_tol) {
  spec.validate();
  if (!(r0 > 0)) throw std::invalid_argument("series start needs r0 > 0");
  double c4 = series_remainder_coeff(spec, u0);
  if (c4 * std::pow(r0, 4) > abs_tol)
    throw std::invalid_argument("series radius too large for the requested tolerance");

  double e2u0 = std::exp(2.0 * u0);
  double a = -spec.at_origin() * e2u0 / 4.0;
  double b = spec.has_power_weight() ? e2u0 / ((2.0 + spec.p) * (2.0 + spec.p)) : 0.0;
  double rp = spec.has_power_weight() ? std::pow(r0, 2.0 + spec.p) : 0.0;
  double u = u0 + a * r0 * r0 + b * rp;
  double w = 2.0 * a * r0 * r0 + (2.0 + spec.p) * b * rp;
  return {u, w};
}

RadialProfile integrate(const CurvatureSpec& spec, double u0, const IntegratorControls& controls) {
  spec.validate();
  controls.validate();

  RadialProfile out;
  out.spec = spec;
  out.controls = controls;
  out.u0 = u0;

  const double p = spec.p;
  const bool power = spec.has_power_weight();
  const bool regularized = spec.kind == CurvatureKind::RegularizedPower;
  const double two_pi = 2.0 * kPi;

  // State in t = log r: y = (u, w, vol, pw).
  auto rhs = [&](double t, const OdeState<4>& y, OdeState<4>& dydt) {
    double r = std::exp(t);
    double e2u = std::exp(std::min(2.0 * y[0], 600.0));
    double ke2u;
    if (regularized) {
      // Combine the exponents so the Gaussian damping acts before overflow.
      double expo = std::min(2.0 * y[0] - r * r, 600.0);
      ke2u = (spec.lambda - std::pow(r, p)) * std::exp(expo);
    } else {
      ke2u = eval_curvature(spec, r) * e2u;
    }
    double r2 = r * r;
    dydt[0] = y[1];
    dydt[1] = -r2 * ke2u;
    dydt[2] = two_pi * r2 * e2u;
    dydt[3] = power ? two_pi * r2 * std::pow(r, p) * e2u : 0.0;
  };

  const double r0 = std::min(controls.r_start, series_radius(spec, u0, controls.abs_tol));
  auto [u_init, w_init] = series_start(spec, u0, r0, controls.abs_tol);
  double e2u0 = std::exp(2.0 * u0);
  OdeState<4> y{u_init, w_init, kPi * e2u0 * r0 * r0,
                power ? two_pi * e2u0 * std::pow(r0, 2.0 + p) / (2.0 + p) : 0.0};
  double t = std::log(r0);
  const double t_end = std::log(controls.r_max);

  auto push_node = [&](double tn, const OdeState<4>& yn) {
    out.r.push_back(std::exp(tn));
    out.u.push_back(yn[0]);
    out.w.push_back(yn[1]);
    out.vol.push_back(yn[2]);
    out.pw.push_back(yn[3]);
  };
  push_node(t, y);

  // Trailing-window stabilization test on Lambda(r) = -2 pi w. For the
  // sign-changing kind a final value at or below the window floor (2+p) pi
  // cannot belong to a solution (total curvature is bounded below by it), so
  // such shots classify as MaxRadius: the crash lives beyond r_max.
  auto stabilized_at_end = [&]() {
    if (spec.kind == CurvatureKind::SignChangingPower &&
        !(out.lam_back() > lambda_star(spec.p)))
      return false;
    double t_last = std::log(out.r.back());
    double t_lo = t_last - controls.stabilization_window * std::log(10.0);
    if (std::log(out.r.front()) > t_lo) return false;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = out.size(); i-- > 0;) {
      if (std::log(out.r[i]) < t_lo) break;
      double lam = out.lam(i);
      lo = std::min(lo, lam);
      hi = std::max(hi, lam);
    }
    return hi - lo <= controls.stab_tol;
  };

  Dopri5<4, decltype(rhs)> stepper(rhs, controls.rel_tol, controls.abs_tol);
  stepper.reset(t, y);
  double h = 1e-3;
  const double w_eps = std::max(controls.abs_tol, 1e-13);
  const double decade = std::log(10.0);

  bool w_pos_active = false;
  double t_w_pos = 0.0, w_at_pos = 0.0;
  int rejects_in_a_row = 0;
  std::size_t max_steps = 4000000;

  out.status = ShotStatus::MaxRadius;
  for (std::size_t step = 0; step < max_steps; ++step) {
    if (t + h > t_end) h = t_end - t;
    if (!stepper.try_step(t, y, h)) {
      if (++rejects_in_a_row > 200 || h < 1e-12) {
        out.status = ShotStatus::StepFailure;
        return out;
      }
      continue;
    }
    rejects_in_a_row = 0;
    push_node(t, y);
    double r = std::exp(t);

    if (!std::isfinite(y[0]) || !std::isfinite(y[1])) {
      out.status = ShotStatus::StepFailure;
      return out;
    }
    if (regularized && y[0] > u0 + r * r) {
      out.status = ShotStatus::GrowthGuard;
      return out;
    }
    if (!regularized && y[0] > u0 + 0.5) {
      out.status = ShotStatus::Diverged;
      return out;
    }
    if (!regularized && y[1] > 1.0) {
      // Lambda(r) < -2 pi: curvature mass is irrecoverably lost and the
      // upturn blows up in finite log-radius; stop before it stiffens.
      out.status = ShotStatus::Diverged;
      return out;
    }
    if (y[1] > w_eps) {
      if (!w_pos_active) {
        w_pos_active = true;
        t_w_pos = t;
        w_at_pos = y[1];
      } else if (t - t_w_pos >= decade && y[1] >= w_at_pos) {
        out.status = ShotStatus::Diverged;
        return out;
      }
    } else {
      w_pos_active = false;
    }
    if (y[0] < controls.u_floor) {
      out.status = stabilized_at_end() ? ShotStatus::Converged : ShotStatus::MaxRadius;
      return out;
    }
    if (t >= t_end * (1.0 - 1e-15) && t >= t_end - 1e-12) {
      out.status = stabilized_at_end() ? ShotStatus::Converged : ShotStatus::MaxRadius;
      return out;
    }
    // r >= 100 keeps the early stop from firing before the curvature-carrying
    // region (sign change at r <= 1, Gaussian damping dead past r ~ 6).
    if (controls.stop_on_stabilization && r >= 100.0 && (step % 16 == 0) &&
        stabilized_at_end()) {
      out.status = ShotStatus::Converged;
      return out;
    }
  }
  out.status = ShotStatus::StepFailure;
  return out;
}

std::vector<std::array<double, 3>> resample(const RadialProfile& profile,
                                            std::span<const double> radii) {
  std::vector<std::array<double, 3>> out;
  if (radii.empty()) return out;
  ProfileSampler sampler(profile);
  out.reserve(radii.size());
  for (double r : radii) out.push_back({r, sampler.u(r), sampler.w(r)});
  return out;
}

}  // namespace gcurv
