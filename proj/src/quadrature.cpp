#include "gcurv/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace gcurv {

double local_total_curvature(const RadialProfile& profile, double r) {
  ProfileSampler sampler(profile);
  return sampler.lam(r);
}

TailEstimate tail_extrapolate(const RadialProfile& profile, const FarFieldFit& fit, double R,
                              double margin) {
  if (fit.r_hi <= fit.r_lo) throw std::invalid_argument("tail_extrapolate: missing fit");
  if (fit.r_hi > R * (1.0 + 1e-12))
    throw std::invalid_argument("tail_extrapolate: fit window extends past R");

  ProfileSampler sampler(profile);
  double lam = sampler.lam(std::min(R, profile.r_back()));
  double m = lam / kPi;  // Lambda in units of pi
  double e2c = std::exp(2.0 * fit.C);

  TailEstimate tail;
  tail.v_ok = m > 2.0 + 1e-9;
  if (tail.v_ok) tail.dV = 2.0 * kPi * e2c * std::pow(R, 2.0 - m) / (m - 2.0);

  if (!profile.spec.has_power_weight()) {
    tail.p_ok = true;  // no p-weighted integral to extrapolate
    return tail;
  }
  double p = profile.spec.p;
  tail.p_ok = lam > (2.0 + p) * kPi + margin;
  if (tail.p_ok) tail.dP = 2.0 * kPi * e2c * std::pow(R, 2.0 + p - m) / (m - 2.0 - p);
  return tail;
}

IntegralReport pohozaev_quantities(const RadialProfile& profile, const FarFieldFit& fit,
                                   double tail_margin) {
  if (profile.status != ShotStatus::Converged)
    throw std::invalid_argument("pohozaev_quantities: profile did not converge");

  double R = profile.r_back();
  TailEstimate tail = tail_extrapolate(profile, fit, R, tail_margin);

  IntegralReport report;
  report.R = R;
  report.Lambda_hat = profile.lam_back();
  report.V_hat = profile.vol.back() + tail.dV;
  if (profile.spec.has_power_weight()) report.P_hat = profile.pw.back() + tail.dP;
  double total = report.V_hat + report.P_hat.value_or(0.0);
  report.tail_fraction = total > 0 ? (tail.dV + tail.dP) / total : 0.0;
  report.converged = tail.ok();
  return report;
}

double divergence_gap(const RadialProfile& profile, double r) {
  ProfileSampler sampler(profile);
  double t0 = std::log(profile.r_front());
  double t1 = std::log(r);
  if (t1 <= t0) return 0.0;

  // Composite Simpson in t = log r of 2 pi K(s) e^{2u} s^2; independent of the
  // running ODE integrals.
  auto integrand = [&](double t) {
    double s = std::exp(t);
    double u = sampler.u(s);
    if (profile.spec.kind == CurvatureKind::RegularizedPower) {
      double expo = 2.0 * u - s * s;
      return 2.0 * kPi * s * s * (profile.spec.lambda - std::pow(s, profile.spec.p)) *
             std::exp(std::min(expo, 600.0));
    }
    return 2.0 * kPi * s * s * eval_curvature(profile.spec, s) * std::exp(2.0 * u);
  };

  std::size_t n = static_cast<std::size_t>(std::ceil((t1 - t0) / std::log(10.0) * 160.0));
  n = std::max<std::size_t>(n, 64);
  if (n % 2 == 1) ++n;
  double h = (t1 - t0) / static_cast<double>(n);
  double acc = integrand(t0) + integrand(t1);
  for (std::size_t i = 1; i < n; ++i) acc += integrand(t0 + h * i) * (i % 2 == 1 ? 4.0 : 2.0);
  double integral = acc * h / 3.0;

  double lam_r = sampler.lam(r);
  double lam_0 = -2.0 * kPi * profile.w.front();
  return std::abs(lam_r - lam_0 - integral);
}

}  // namespace gcurv
