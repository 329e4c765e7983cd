#ifndef GCURV_SHOOTING_HPP
#define GCURV_SHOOTING_HPP

#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "gcurv/integrate.hpp"

namespace gcurv {

/// No sign change of Lambda(u0) - target was found in the bracket range.
class NoBracketError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The bracket closed without |Lambda_hat - target| reaching the solver tolerance.
class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of one shot. Lambda_hat is finite iff the shot converged.
struct ShootingResult {
  double u0 = 0.0;
  double Lambda_hat = std::numeric_limits<double>::quiet_NaN();
  ShotStatus status = ShotStatus::StepFailure;
  std::shared_ptr<const RadialProfile> profile;
};

struct SolverOptions {
  double lambda_tol = 1e-6 * kLambdaSphere;  // |Lambda_hat - target| acceptance
  double bracket_hi = 25.0;
  int max_iter = 120;
};

/// Integrates one shot and reports the stabilized total curvature.
ShootingResult lambda_of_u0(const CurvatureSpec& spec, double u0,
                            const IntegratorControls& controls);

/// Prescribes the total curvature by bracketing u0 -> Lambda_hat(u0) and
/// running a Brent-style derivative-free root finder. The bracket expands
/// geometrically from the height lower bound (log sqrt(p+2) for the
/// sign-changing kind, its regularized analogue otherwise). Diverged shots
/// count as "below window" for bracketing. Throws NoBracketError / SolveError.
ShootingResult solve_for_lambda(const CurvatureSpec& spec, double target,
                                const IntegratorControls& controls,
                                const SolverOptions& opts = {});

/// One result per grid point, order preserved; points run in parallel
/// (worker count from GCURV_WORKERS, default hardware concurrency).
std::vector<ShootingResult> sweep(const CurvatureSpec& spec, std::span<const double> u0_grid,
                                  const IntegratorControls& controls);

}  // namespace gcurv

#endif
