#ifndef GCURV_MODEL_HPP
#define GCURV_MODEL_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace gcurv {

inline constexpr double kPi = 3.14159265358979323846;

/// Total curvature of the round sphere, 4*pi.
inline constexpr double kLambdaSphere = 4.0 * kPi;

/// Lower endpoint of the admissible window for K(r) = 1 - r^p: (2+p)*pi.
inline double lambda_star(double p) { return (2.0 + p) * kPi; }

enum class CurvatureKind {
  SignChangingPower,  // K(r) = 1 - r^p
  RegularizedPower,   // K(r) = (lambda - r^p) * exp(-r^2)
  Constant,           // K(r) = k0
};

std::string to_string(CurvatureKind kind);
CurvatureKind curvature_kind_from_string(const std::string& s);

/// Which curvature function governs the radial equation u'' + u'/r + K(r) e^{2u} = 0.
struct CurvatureSpec {
  CurvatureKind kind = CurvatureKind::SignChangingPower;
  double p = 1.0;       // power exponent (SignChangingPower, RegularizedPower)
  double lambda = 0.0;  // regularization level (RegularizedPower only)
  double k0 = 0.0;      // curvature value (Constant only)

  static CurvatureSpec sign_changing(double p);
  static CurvatureSpec regularized(double p, double lambda);
  static CurvatureSpec constant(double k0);

  /// Throws std::invalid_argument on parameter violations (p<=0, lambda<=0, ...).
  void validate() const;

  /// K at the origin: 1, lambda, or k0 depending on the kind.
  double at_origin() const;

  /// Radius where K changes sign: 1 for SignChangingPower, lambda^{1/p} for
  /// RegularizedPower, +inf for a positive Constant (never), 0 for k0 <= 0.
  double sign_change_radius() const;

  bool has_power_weight() const { return kind != CurvatureKind::Constant; }

  bool operator==(const CurvatureSpec&) const = default;
};

/// K(r) for the selected model. Total on r >= 0 for a valid spec.
double eval_curvature(const CurvatureSpec& spec, double r);

/// Admissible total-curvature window ((2+p)*pi, 4*pi) for K = 1 - r^p.
struct Window {
  double lambda_star = 0.0;
  double lambda_sph = kLambdaSphere;
  bool nonempty = false;
};

/// Window for a given exponent; nonempty iff p < 2.
Window window(double p);

}  // namespace gcurv

#endif
