#include "gcurv/model.hpp"

#include <limits>

namespace gcurv {

std::string to_string(CurvatureKind kind) {
  switch (kind) {
    case CurvatureKind::SignChangingPower: return "sign_changing_power";
    case CurvatureKind::RegularizedPower: return "regularized_power";
    case CurvatureKind::Constant: return "constant";
  }
  throw std::logic_error("unknown CurvatureKind");
}

CurvatureKind curvature_kind_from_string(const std::string& s) {
  if (s == "sign_changing_power") return CurvatureKind::SignChangingPower;
  if (s == "regularized_power") return CurvatureKind::RegularizedPower;
  if (s == "constant") return CurvatureKind::Constant;
  throw std::invalid_argument("unknown curvature kind: " + s);
}

CurvatureSpec CurvatureSpec::sign_changing(double p) {
  CurvatureSpec spec{CurvatureKind::SignChangingPower, p, 0.0, 0.0};
  spec.validate();
  return spec;
}

CurvatureSpec CurvatureSpec::regularized(double p, double lambda) {
  CurvatureSpec spec{CurvatureKind::RegularizedPower, p, lambda, 0.0};
  spec.validate();
  return spec;
}

CurvatureSpec CurvatureSpec::constant(double k0) {
  CurvatureSpec spec{CurvatureKind::Constant, 0.0, 0.0, k0};
  spec.validate();
  return spec;
}

void CurvatureSpec::validate() const {
  switch (kind) {
    case CurvatureKind::SignChangingPower:
      if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("sign_changing_power requires p > 0");
      break;
    case CurvatureKind::RegularizedPower:
      if (!(p > 0.0) || !std::isfinite(p))
        throw std::invalid_argument("regularized_power requires p > 0");
      if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("regularized_power requires lambda > 0");
      break;
    case CurvatureKind::Constant:
      if (!std::isfinite(k0)) throw std::invalid_argument("constant curvature must be finite");
      break;
  }
}

double CurvatureSpec::at_origin() const {
  switch (kind) {
    case CurvatureKind::SignChangingPower: return 1.0;
    case CurvatureKind::RegularizedPower: return lambda;
    case CurvatureKind::Constant: return k0;
  }
  throw std::logic_error("unknown CurvatureKind");
}

double CurvatureSpec::sign_change_radius() const {
  switch (kind) {
    case CurvatureKind::SignChangingPower: return 1.0;
    case CurvatureKind::RegularizedPower: return std::pow(lambda, 1.0 / p);
    case CurvatureKind::Constant:
      return k0 > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  throw std::logic_error("unknown CurvatureKind");
}

double eval_curvature(const CurvatureSpec& spec, double r) {
  switch (spec.kind) {
    case CurvatureKind::SignChangingPower: return 1.0 - std::pow(r, spec.p);
    case CurvatureKind::RegularizedPower:
      return (spec.lambda - std::pow(r, spec.p)) * std::exp(-r * r);
    case CurvatureKind::Constant: return spec.k0;
  }
  throw std::logic_error("unknown CurvatureKind");
}

Window window(double p) {
  if (!(p > 0.0)) throw std::invalid_argument("window requires p > 0");
  return Window{lambda_star(p), kLambdaSphere, p < 2.0};
}

}  // namespace gcurv
