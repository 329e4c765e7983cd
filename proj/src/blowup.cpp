#include "gcurv/blowup.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace gcurv {

BlowupDiagnostics rescale_to_bubble(const RadialProfile& profile, const BlowupOptions& opts) {
  if (profile.status != ShotStatus::Converged)
    throw std::invalid_argument("rescale_to_bubble: profile did not converge");
  if (!(opts.R_eta > 0) || opts.n_grid < 2)
    throw std::invalid_argument("rescale_to_bubble: bad grid options");

  BlowupDiagnostics diag;
  diag.target = std::numeric_limits<double>::quiet_NaN();
  diag.u0 = profile.u0;
  diag.mu = 2.0 * std::exp(-profile.u0);
  diag.lambda_hat = profile.lam_back();
  diag.delta = opts.delta;
  if (diag.mu * opts.R_eta > profile.r_back())
    throw std::out_of_range("rescale_to_bubble: mu * R_eta exceeds the profile");

  ProfileSampler sampler(profile);
  const double log2 = std::log(2.0);
  diag.eta.reserve(opts.n_grid + 1);
  diag.eta.emplace_back(0.0, log2);  // eta(0) = log 2 by definition
  for (int i = 1; i <= opts.n_grid; ++i) {
    double x = opts.R_eta * i / opts.n_grid;
    double r = diag.mu * x;
    if (r < profile.r_front()) continue;  // below the series start; bubble gap ~ 0 there
    double eta = sampler.u(r) - profile.u0 + log2;
    double bubble = std::log(2.0 / (1.0 + x * x));
    diag.sup_dist = std::max(diag.sup_dist, std::abs(eta - bubble));
    double w_eta = sampler.w(r);  // x eta'(x) = w(mu x)
    double bubble_w = -2.0 * x * x / (1.0 + x * x);
    diag.grad_dist = std::max(diag.grad_dist, std::abs(w_eta - bubble_w));
    diag.eta.emplace_back(x, eta);
  }

  double delta = std::min(opts.delta, profile.r_back());
  diag.mass_in_delta = delta >= profile.r_front() ? sampler.lam(delta) : 0.0;
  diag.mass_fraction = diag.lambda_hat != 0.0 ? diag.mass_in_delta / diag.lambda_hat : 0.0;
  return diag;
}

std::vector<BlowupDiagnostics> blowup_sweep(double p, std::span<const double> targets,
                                            const IntegratorControls& controls,
                                            const BlowupOptions& opts,
                                            const SolverOptions& solver) {
  if (targets.empty()) throw std::invalid_argument("blowup_sweep: no targets");
  for (std::size_t i = 0; i + 1 < targets.size(); ++i)
    if (!(targets[i] < targets[i + 1]))
      throw std::invalid_argument("blowup_sweep: targets must be strictly increasing");
  if (!(targets.back() < kLambdaSphere))
    throw std::invalid_argument("blowup_sweep: targets must stay below 4*pi");

  CurvatureSpec spec = CurvatureSpec::sign_changing(p);
  std::vector<BlowupDiagnostics> out(targets.size());
  std::vector<std::exception_ptr> errors(targets.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < targets.size(); i = next.fetch_add(1)) {
      try {
        ShootingResult res = solve_for_lambda(spec, targets[i], controls, solver);
        out[i] = rescale_to_bubble(*res.profile, opts);
        out[i].target = targets[i];
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("GCURV_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  n = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, n), targets.size()));
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace gcurv
