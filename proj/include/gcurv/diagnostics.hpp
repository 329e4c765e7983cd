#ifndef GCURV_DIAGNOSTICS_HPP
#define GCURV_DIAGNOSTICS_HPP

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gcurv/farfield.hpp"
#include "gcurv/quadrature.hpp"

namespace gcurv {

/// Normalized Pohozaev residual ((L/4pi)(L - 4pi) + (p/2) P) / (1 + L^2).
double pohozaev_residual(const IntegralReport& report, double p);

/// Normalized volume-identity residual (V - L + (2L/(4 pi p))(L - 4pi)) / (1 + V).
double volume_residual(const IntegralReport& report, double p);

/// Kelvin transform samples: u~(s) = u(1/s) - (Lambda/2pi) log s for s in (0, 1].
std::vector<std::pair<double, double>> kelvin_transform(const RadialProfile& profile,
                                                        double Lambda,
                                                        std::span<const double> s_grid);

/// sup of r |u'(r)| = |w| over the window (clipped to the profile range).
double gradient_decay(const RadialProfile& profile, double r_lo, double r_hi);

/// Endpoint ratios (u(r) + (1 + p/2) log r) / log log r. Refuses unless
/// Lambda_hat is within endpoint_margin of (2+p) pi; radii must be >= e^2.
std::vector<std::pair<double, double>> loglog_ratio(const RadialProfile& profile, double p,
                                                    std::span<const double> radii,
                                                    double endpoint_margin = 1e-2);

/// Node-wise non-increase of u, with abs_tol slack for plateaus.
bool monotone_nonincreasing(const RadialProfile& profile);

struct DiagnosticsOptions {
  double fit_lo = 1e3;
  double fit_hi = 1e6;
  // alpha is only reported when Lambda - Lambda_* exceeds this gap (the
  // remainder is not a clean power law below it).
  double alpha_gate = 0.1 * kPi;
  std::vector<double> kelvin_s = {1e-1, 1e-2, 1e-3, 1e-4};
  std::vector<double> loglog_radii = {1e3, 1e5, 1e7};
  double endpoint_margin = 1e-2;
  double tail_margin = 0.2 * kPi;
};

/// Certificate of one profile against the identities and asymptotics:
/// Pohozaev and volume residuals, far-field fit, gradient bound, Kelvin
/// limit, endpoint log-log trend, monotonicity.
struct DiagnosticsReport {
  std::optional<double> pohozaev_residual;
  std::optional<double> volume_residual;
  FarFieldFit farfield;
  double gradient_bound = 0.0;
  double kelvin_sup = 0.0;
  std::optional<double> loglog_ratio;  // at the largest requested radius
  bool monotone = false;
};

/// Assembles the full report; `report` may be null when the integral report is
/// unavailable (profile not Converged), in which case the residuals are absent.
DiagnosticsReport compute_diagnostics(const RadialProfile& profile, const IntegralReport* report,
                                      const DiagnosticsOptions& opts = {});

}  // namespace gcurv

#endif
