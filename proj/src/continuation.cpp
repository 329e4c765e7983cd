#include "gcurv/continuation.hpp"

#include <cmath>
#include <stdexcept>

namespace gcurv {

RadialProfile solve_regularized(double p, double lambda, double target,
                                const IntegratorControls& controls, const SolverOptions& solver) {
  if (!(target > 0.0 && target < kLambdaSphere))
    throw std::invalid_argument("solve_regularized: target must lie in (0, 4*pi)");
  CurvatureSpec spec = CurvatureSpec::regularized(p, lambda);
  ShootingResult res = solve_for_lambda(spec, target, controls, solver);
  return *res.profile;
}

ContinuationStep rescaled_eta(const RadialProfile& profile, double lambda,
                              const ContinuationOptions& opts) {
  if (profile.status != ShotStatus::Converged)
    throw std::invalid_argument("rescaled_eta: profile did not converge");
  ContinuationStep step;
  step.lambda = lambda;
  step.u0 = profile.u0;
  step.r_lambda = std::exp(-profile.u0) / std::sqrt(lambda);
  double p = profile.spec.p;
  step.ratio = std::pow(step.r_lambda, p) / lambda;
  step.profile = std::make_shared<RadialProfile>(profile);

  ProfileSampler sampler(profile);
  step.eta.reserve(opts.n_eta + 1);
  step.eta.emplace_back(0.0, 0.0);  // eta(0) = 0 by construction
  double t_lo = std::log(opts.eta_s_lo), t_hi = std::log(opts.eta_s_hi);
  for (int i = 0; i < opts.n_eta; ++i) {
    double s = std::exp(t_lo + (t_hi - t_lo) * i / (opts.n_eta - 1));
    double r = step.r_lambda * s;
    if (r < profile.r_front() || r > profile.r_back()) continue;
    step.eta.emplace_back(s, sampler.u(r) - profile.u0);
  }
  return step;
}

namespace {

// Limit of f(lambda) = L + a lambda^beta through three decreasing lambdas.
// Falls back to Aitken (or the last value) when the points do not fit the
// power-law family; returns the last value for an already-flat tail.
double power_law_limit(double l1, double l2, double l3, double f1, double f2, double f3) {
  double d1 = f2 - f1, d2 = f3 - f2;
  double scale = 1.0 + std::abs(f3);
  if (std::abs(d2) <= 1e-13 * scale) return f3;
  if (d1 * d2 <= 0.0 || std::abs(d2) >= std::abs(d1)) {
    double denom = d2 - d1;
    return std::abs(denom) > 1e-14 * scale ? f3 - d2 * d2 / denom : f3;
  }
  double q_target = d1 / d2;
  auto g = [&](double beta) {
    double a1 = std::pow(l1, beta), a2 = std::pow(l2, beta), a3 = std::pow(l3, beta);
    return (a2 - a1) / (a3 - a2) - q_target;
  };
  double lo = 0.02, hi = 8.0;
  double glo = g(lo);
  if (glo * g(hi) > 0.0) {
    double denom = d2 - d1;
    return f3 - d2 * d2 / denom;  // Aitken fallback
  }
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) * glo <= 0.0)
      hi = mid;
    else {
      lo = mid;
      glo = g(lo);
    }
  }
  double beta = 0.5 * (lo + hi);
  double a = d2 / (std::pow(l3, beta) - std::pow(l2, beta));
  return f3 - a * std::pow(l3, beta);
}

}  // namespace

double extrapolate_ratio_limit(std::span<const double> lambdas, std::span<const double> ratios) {
  if (lambdas.size() != ratios.size() || ratios.empty())
    throw std::invalid_argument("extrapolate_ratio_limit: bad input");
  std::size_t n = ratios.size();
  if (n < 3) return ratios[n - 1];

  double l1 = lambdas[n - 3], l2 = lambdas[n - 2], l3 = lambdas[n - 1];
  double r1 = ratios[n - 3], r2 = ratios[n - 2], r3 = ratios[n - 1];
  double d1 = r2 - r1, d2 = r3 - r2;
  double scale = 1.0 + std::abs(r3);
  if (std::abs(d2) <= 1e-13 * scale) return r3;  // already constant
  if (d1 * d2 <= 0.0 || std::abs(d2) >= std::abs(d1))
    throw FailedLimitError("ratio sequence is not converging on the schedule");
  return power_law_limit(l1, l2, l3, r1, r2, r3);
}

ContinuationResult run_continuation(double p, double target, std::span<const double> schedule,
                                    const IntegratorControls& controls,
                                    const ContinuationOptions& opts,
                                    const SolverOptions& solver) {
  if (schedule.empty()) throw std::invalid_argument("run_continuation: empty schedule");
  for (std::size_t i = 0; i + 1 < schedule.size(); ++i)
    if (!(schedule[i] > schedule[i + 1]))
      throw std::invalid_argument("run_continuation: schedule must decrease");

  ContinuationResult result;
  result.p = p;
  result.target = target;

  std::vector<double> lambdas(schedule.begin(), schedule.end());
  std::vector<double> ratios;
  for (double lambda : lambdas) {
    RadialProfile profile = solve_regularized(p, lambda, target, controls, solver);
    ContinuationStep step = rescaled_eta(profile, lambda, opts);
    ratios.push_back(step.ratio);
    result.steps.push_back(std::move(step));
  }
  for (double ratio : ratios)
    if (!(ratio > 0.0)) throw FailedLimitError("nonpositive rescaling ratio");

  result.mu_hat = extrapolate_ratio_limit(lambdas, ratios);
  if (!(result.mu_hat > 0.0)) throw FailedLimitError("extrapolated mu is not positive");
  result.rho = std::pow(result.mu_hat, -1.0 / p);

  // Final rescale u(x) = eta(rho x) + log rho. The limit is estimated
  // pointwise by the same power-law extrapolation over the last (up to three)
  // steps, each rescaled with its own ratio; this removes the leading
  // finite-lambda bias (Gaussian damping and ratio drift) from the profile.
  std::size_t n_steps = result.steps.size();
  std::size_t used = std::min<std::size_t>(3, n_steps);
  std::vector<const ContinuationStep*> last_steps;
  std::vector<double> rhos, log_rhos, ls;
  std::vector<ProfileSampler> samplers;
  for (std::size_t k = n_steps - used; k < n_steps; ++k) {
    const ContinuationStep& step = result.steps[k];
    last_steps.push_back(&step);
    rhos.push_back(std::pow(step.ratio, -1.0 / p));
    log_rhos.push_back(std::log(rhos.back()));
    ls.push_back(step.lambda);
    samplers.emplace_back(*step.profile);
  }
  auto extrapolate = [&](const std::vector<double>& f) {
    if (used == 3) return power_law_limit(ls[0], ls[1], ls[2], f[0], f[1], f[2]);
    return f.back();
  };

  ShootingResult direct = solve_for_lambda(CurvatureSpec::sign_changing(p), target, controls);
  ProfileSampler direct_sampler(*direct.profile);

  result.final_profile.reserve(opts.n_compare);
  result.match_error = 0.0;
  std::vector<double> f(used);
  for (int i = 0; i < opts.n_compare; ++i) {
    double x = opts.r_compare * i / (opts.n_compare - 1);
    bool usable = true;
    for (std::size_t k = 0; k < used; ++k) {
      if (i == 0) {
        f[k] = log_rhos[k];  // eta(0) = 0
        continue;
      }
      double r_eta = last_steps[k]->r_lambda * rhos[k] * x;
      if (r_eta < last_steps[k]->profile->r_front() ||
          r_eta > last_steps[k]->profile->r_back()) {
        usable = false;
        break;
      }
      f[k] = samplers[k].u(r_eta) - last_steps[k]->u0 + log_rhos[k];
    }
    if (!usable) continue;
    double final_u = extrapolate(f);
    double direct_u = (i == 0 || x < direct.profile->r_front()) ? direct.profile->u0
                                                                : direct_sampler.u(x);
    result.final_profile.emplace_back(x, final_u);
    result.match_error = std::max(result.match_error, std::abs(final_u - direct_u));
  }
  return result;
}

}  // namespace gcurv
