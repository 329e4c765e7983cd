#include "gcurv/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gcurv {

namespace {

struct LineFit {
  double intercept = 0.0, slope = 0.0;
};

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("degenerate least-squares fit");
  return {(sxx * sy - sx * sxy) / det, (n * sxy - sx * sy) / det};
}

}  // namespace

FarFieldFit farfield_fit(const RadialProfile& profile, double r_lo, double r_hi, int n_samples) {
  ProfileSampler sampler(profile);
  r_lo = std::max(r_lo, profile.r_front());
  r_hi = std::min(r_hi, profile.r_back());
  if (!(r_hi >= 100.0 * r_lo))
    throw std::invalid_argument("farfield_fit: window too narrow (needs two decades)");
  if (n_samples < 8) throw std::invalid_argument("farfield_fit: too few samples");

  std::vector<double> x(n_samples), y(n_samples);
  double t_lo = std::log(r_lo), t_hi = std::log(r_hi);
  for (int i = 0; i < n_samples; ++i) {
    double t = t_lo + (t_hi - t_lo) * i / (n_samples - 1);
    x[i] = t;
    y[i] = sampler.u(std::exp(t));
  }
  LineFit line = least_squares(x, y);

  FarFieldFit fit;
  fit.slope = line.slope;
  fit.C = line.intercept;
  fit.r_lo = r_lo;
  fit.r_hi = r_hi;

  double ss = 0.0;
  double u_scale = 0.0;
  for (int i = 0; i < n_samples; ++i) u_scale = std::max(u_scale, std::abs(y[i]));
  std::vector<double> xr, yr;
  for (int i = 0; i < n_samples; ++i) {
    double e = y[i] - line.intercept - line.slope * x[i];
    ss += e * e;
    if (std::abs(e) > std::max(1e-13, 1e-11 * u_scale)) {
      xr.push_back(x[i]);
      yr.push_back(std::log(std::abs(e)));
    }
  }
  fit.rms = std::sqrt(ss / n_samples);
  if (xr.size() >= 8) {
    LineFit rem = least_squares(xr, yr);
    if (std::isfinite(rem.slope) && rem.slope < 0) {
      fit.alpha = -rem.slope;
      fit.alpha_fitted = true;
    }
  }
  return fit;
}

double pohozaev_residual(const IntegralReport& report, double p) {
  if (!report.P_hat) throw std::invalid_argument("pohozaev_residual: no p-weighted integral");
  double L = report.Lambda_hat;
  double raw = (L / kLambdaSphere) * (L - kLambdaSphere) + 0.5 * p * (*report.P_hat);
  return raw / (1.0 + L * L);
}

double volume_residual(const IntegralReport& report, double p) {
  if (!(p > 0)) throw std::invalid_argument("volume_residual: requires p > 0");
  double L = report.Lambda_hat;
  double V = report.V_hat;
  double raw = V - L + (2.0 * L / (kLambdaSphere * p)) * (L - kLambdaSphere);
  return raw / (1.0 + V);
}

std::vector<std::pair<double, double>> kelvin_transform(const RadialProfile& profile,
                                                        double Lambda,
                                                        std::span<const double> s_grid) {
  ProfileSampler sampler(profile);
  std::vector<std::pair<double, double>> out;
  out.reserve(s_grid.size());
  for (double s : s_grid) {
    if (!(s > 0.0) || !(s <= 1.0)) throw std::out_of_range("kelvin_transform: s outside (0,1]");
    double u = sampler.u(1.0 / s);  // throws when 1/s is outside the profile
    out.emplace_back(s, u - Lambda / (2.0 * kPi) * std::log(s));
  }
  return out;
}

double gradient_decay(const RadialProfile& profile, double r_lo, double r_hi) {
  r_lo = std::max(r_lo, profile.r_front());
  r_hi = std::min(r_hi, profile.r_back());
  if (!(r_hi > r_lo)) throw std::invalid_argument("gradient_decay: empty window");
  double sup = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    if (profile.r[i] < r_lo || profile.r[i] > r_hi) continue;
    sup = std::max(sup, std::abs(profile.w[i]));
  }
  ProfileSampler sampler(profile);
  sup = std::max({sup, std::abs(sampler.w(r_lo)), std::abs(sampler.w(r_hi))});
  return sup;
}

std::vector<std::pair<double, double>> loglog_ratio(const RadialProfile& profile, double p,
                                                    std::span<const double> radii,
                                                    double endpoint_margin) {
  double lam = profile.lam_back();
  if (std::abs(lam - lambda_star(p)) > endpoint_margin)
    throw std::invalid_argument("loglog_ratio: Lambda_hat is not near the endpoint");
  ProfileSampler sampler(profile);
  std::vector<std::pair<double, double>> out;
  out.reserve(radii.size());
  for (double r : radii) {
    if (!(r >= std::exp(2.0))) throw std::invalid_argument("loglog_ratio: radii must be >= e^2");
    double num = sampler.u(r) + (1.0 + 0.5 * p) * std::log(r);
    out.emplace_back(r, num / std::log(std::log(r)));
  }
  return out;
}

bool monotone_nonincreasing(const RadialProfile& profile) {
  double slack = profile.controls.abs_tol;
  for (std::size_t i = 0; i + 1 < profile.size(); ++i)
    if (profile.u[i + 1] > profile.u[i] + slack) return false;
  return true;
}

DiagnosticsReport compute_diagnostics(const RadialProfile& profile, const IntegralReport* report,
                                      const DiagnosticsOptions& opts) {
  DiagnosticsReport diag;
  diag.farfield = farfield_fit(profile, opts.fit_lo, opts.fit_hi);
  if (profile.spec.kind == CurvatureKind::SignChangingPower &&
      profile.lam_back() - lambda_star(profile.spec.p) <= opts.alpha_gate) {
    diag.farfield.alpha = 0.0;
    diag.farfield.alpha_fitted = false;
  }
  diag.gradient_bound = gradient_decay(profile, opts.fit_lo, opts.fit_hi);

  std::vector<double> s_grid;
  for (double s : opts.kelvin_s)
    if (1.0 / s <= profile.r_back()) s_grid.push_back(s);
  if (!s_grid.empty()) {
    auto kt = kelvin_transform(profile, profile.lam_back(), s_grid);
    double sup = -std::numeric_limits<double>::infinity();
    for (auto& [s, v] : kt) sup = std::max(sup, v);
    diag.kelvin_sup = sup;
  }

  diag.monotone = monotone_nonincreasing(profile);

  // The Pohozaev/volume identities and the endpoint decay belong to the
  // sign-changing problem; they are not reported for other kinds.
  bool sign_changing = profile.spec.kind == CurvatureKind::SignChangingPower;
  if (sign_changing && report && report->P_hat) {
    diag.pohozaev_residual = pohozaev_residual(*report, profile.spec.p);
    diag.volume_residual = volume_residual(*report, profile.spec.p);
  }

  if (sign_changing &&
      std::abs(profile.lam_back() - lambda_star(profile.spec.p)) <= opts.endpoint_margin) {
    std::vector<double> radii;
    for (double r : opts.loglog_radii)
      if (r <= profile.r_back() && r >= profile.r_front()) radii.push_back(r);
    if (!radii.empty()) {
      auto ratios = loglog_ratio(profile, profile.spec.p, radii, opts.endpoint_margin);
      diag.loglog_ratio = ratios.back().second;
    }
  }
  return diag;
}

}  // namespace gcurv
