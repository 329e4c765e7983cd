#ifndef GCURV_INTEGRATE_HPP
#define GCURV_INTEGRATE_HPP

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "gcurv/profile.hpp"

namespace gcurv {

/// Two-term series start at radius r0:
///   u(r0) = u0 - (K(0) e^{2u0}/4) r0^2 + (e^{2u0}/(2+p)^2) r0^{2+p}
/// and the matching w = r0 u'(r0). The r^{2+p} term is absent for the
/// Constant kind. Throws std::invalid_argument when the neglected r^4-scale
/// remainder exceeds abs_tol ("series radius" error).
std::pair<double, double> series_start(const CurvatureSpec& spec, double u0, double r0,
                                       double abs_tol = 1e-12);

/// Largest series radius admissible for the given tolerance (with margin).
double series_radius(const CurvatureSpec& spec, double u0, double abs_tol);

/// Integrates du/dt = w, dw/dt = -r^2 K(r) e^{2u} in t = log r from a series
/// start outward. Termination and status are described on ShotStatus;
/// numerical failures are carried in the status, never thrown.
RadialProfile integrate(const CurvatureSpec& spec, double u0, const IntegratorControls& controls);

/// Monotone-cubic resampling of (u, w) at the requested radii, which must lie
/// within [first node, last node] (std::out_of_range otherwise).
std::vector<std::array<double, 3>> resample(const RadialProfile& profile,
                                            std::span<const double> radii);

}  // namespace gcurv

#endif
