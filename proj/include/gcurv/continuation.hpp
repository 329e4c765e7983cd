#ifndef GCURV_CONTINUATION_HPP
#define GCURV_CONTINUATION_HPP

#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "gcurv/shooting.hpp"

namespace gcurv {

/// The ratio sequence r_lambda^p / lambda failed to settle on a limit.
class FailedLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// One regularized solve plus its rescaling: r_lambda = e^{-u(0)}/sqrt(lambda)
/// (so lambda r_lambda^2 e^{2u(0)} = 1) and eta(s) = u(r_lambda s) - u(0).
struct ContinuationStep {
  double lambda = 0.0;
  double u0 = 0.0;
  double r_lambda = 0.0;
  double ratio = 0.0;  // r_lambda^p / lambda
  std::shared_ptr<const RadialProfile> profile;
  std::vector<std::pair<double, double>> eta;  // (s, eta(s)), log-spaced grid
};

struct ContinuationResult {
  double p = 0.0;
  double target = 0.0;
  std::vector<ContinuationStep> steps;  // lambda decreasing
  double mu_hat = 0.0;                  // extrapolated limit of the ratios
  double rho = 0.0;                     // mu_hat^{-1/p}
  std::vector<std::pair<double, double>> final_profile;  // u(x) = eta(rho x) + log rho
  double match_error = 0.0;  // sup |final - direct| on [0, r_compare]
};

struct ContinuationOptions {
  double r_compare = 10.0;
  int n_compare = 501;
  double eta_s_lo = 1e-2, eta_s_hi = 1e2;
  int n_eta = 181;
};

/// Shooting solution of the regularized equation with prescribed total
/// curvature in (0, 4 pi); super-logarithmic growth in the negative region is
/// guarded (status GrowthGuard), never clipped.
RadialProfile solve_regularized(double p, double lambda, double target,
                                const IntegratorControls& controls,
                                const SolverOptions& solver = {});

/// Rescaling of a converged regularized profile.
ContinuationStep rescaled_eta(const RadialProfile& profile, double lambda,
                              const ContinuationOptions& opts = {});

/// Richardson-style limit of the ratio sequence over the last three schedule
/// points (power-law model mu + a lambda^beta). Throws FailedLimitError when
/// the sequence is not settling.
double extrapolate_ratio_limit(std::span<const double> lambdas, std::span<const double> ratios);

/// Full continuation run: per-lambda regularized solves, ratio extrapolation,
/// final rescale u(x) = eta(rho x) + log rho, and comparison against the
/// direct sign-changing solution at the same target.
ContinuationResult run_continuation(double p, double target, std::span<const double> schedule,
                                    const IntegratorControls& controls,
                                    const ContinuationOptions& opts = {},
                                    const SolverOptions& solver = {});

}  // namespace gcurv

#endif
