#ifndef GCURV_QUADRATURE_HPP
#define GCURV_QUADRATURE_HPP

#include <optional>

#include "gcurv/farfield.hpp"
#include "gcurv/profile.hpp"

namespace gcurv {

/// Lambda(r) = -2 pi r u'(r), the curvature mass inside radius r.
double local_total_curvature(const RadialProfile& profile, double r);

/// Power-law tail of the integrals beyond the truncation radius, closed under
/// e^{2u} ~ e^{2C} r^{-Lambda/pi}.
struct TailEstimate {
  double dV = 0.0;
  double dP = 0.0;
  bool v_ok = false;  // requires Lambda > 2 pi
  bool p_ok = false;  // requires Lambda > (2+p) pi + margin; else dP is a lower bound (0)
  bool ok() const { return v_ok && p_ok; }
};

/// Tail contributions beyond R. dV is valid for Lambda > 2 pi and dP for
/// Lambda > (2+p) pi + margin; at the endpoint the p-weighted density decays
/// like 1/(r log^2 r) and only a lower bound is reported.
TailEstimate tail_extrapolate(const RadialProfile& profile, const FarFieldFit& fit, double R,
                              double margin = 0.2 * kPi);

/// Total-curvature and Pohozaev integrals with tail extrapolation.
struct IntegralReport {
  double Lambda_hat = 0.0;
  double V_hat = 0.0;
  std::optional<double> P_hat;  // absent for the Constant kind
  double tail_fraction = 0.0;
  bool converged = false;
  double R = 0.0;  // truncation radius of the measured part
};

/// Assembles the report at the profile's final radius. Refuses profiles whose
/// status is not Converged.
IntegralReport pohozaev_quantities(const RadialProfile& profile, const FarFieldFit& fit,
                                   double tail_margin = 0.2 * kPi);

/// Divergence-theorem residual |Lambda(r) - Lambda(r0) - 2 pi Int_{r0}^{r} K e^{2u} s ds|
/// with the integral quadratured independently (composite Simpson on dense
/// resampled values), not read from the ODE state.
double divergence_gap(const RadialProfile& profile, double r);

}  // namespace gcurv

#endif
