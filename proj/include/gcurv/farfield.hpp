#ifndef GCURV_FARFIELD_HPP
#define GCURV_FARFIELD_HPP

#include "gcurv/profile.hpp"

namespace gcurv {

/// Far-field law u(r) = slope * log r + C + O(r^{-alpha}) fitted on a window.
/// slope estimates -Lambda/(2 pi); C is the additive constant; alpha the
/// decay exponent of the remainder (alpha_fitted says whether the remainder
/// was large enough to fit).
struct FarFieldFit {
  double slope = 0.0;
  double C = 0.0;
  double alpha = 0.0;
  bool alpha_fitted = false;
  double r_lo = 0.0, r_hi = 0.0;
  double rms = 0.0;
};

/// Least-squares fit of u against a + b log r on [r_lo, r_hi] (clipped to the
/// profile range), then (c, alpha) from the remainder against c r^{-alpha}.
/// The window must span at least two decades.
FarFieldFit farfield_fit(const RadialProfile& profile, double r_lo, double r_hi,
                         int n_samples = 200);

}  // namespace gcurv

#endif
