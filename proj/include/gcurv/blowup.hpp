#ifndef GCURV_BLOWUP_HPP
#define GCURV_BLOWUP_HPP

#include <span>
#include <utility>
#include <vector>

#include "gcurv/shooting.hpp"

namespace gcurv {

/// Rescaling of a solution toward the spherical bubble: mu = 2 e^{-u(0)},
/// eta(x) = u(mu x) - u(0) + log 2, compared against log(2/(1+|x|^2)).
struct BlowupDiagnostics {
  double target = 0.0;  // requested Lambda (NaN outside sweeps)
  double u0 = 0.0;
  double mu = 0.0;
  double lambda_hat = 0.0;
  std::vector<std::pair<double, double>> eta;  // (x, eta(x)) on [0, R_eta]
  double sup_dist = 0.0;   // C0 distance to the bubble on the grid
  double grad_dist = 0.0;  // C1 distance via x eta'(x)
  double delta = 0.0;
  double mass_in_delta = 0.0;  // Lambda(delta)
  double mass_fraction = 0.0;  // Lambda(delta) / Lambda_hat
};

struct BlowupOptions {
  double R_eta = 10.0;
  double delta = 0.1;
  int n_grid = 400;
};

/// Diagnostics for one converged profile; range error if mu R_eta exceeds it.
BlowupDiagnostics rescale_to_bubble(const RadialProfile& profile,
                                    const BlowupOptions& opts = {});

/// One diagnostic per target (strictly increasing toward 4 pi); targets are
/// solved independently and may run in parallel.
std::vector<BlowupDiagnostics> blowup_sweep(double p, std::span<const double> targets,
                                            const IntegratorControls& controls,
                                            const BlowupOptions& opts = {},
                                            const SolverOptions& solver = {});

}  // namespace gcurv

#endif
