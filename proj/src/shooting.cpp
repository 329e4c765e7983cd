#include "gcurv/shooting.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace gcurv {

namespace {

// Height lower bound below which no solution exists: since u is radially
// decreasing, the curvature mass is at most pi e^{2u0} for the sign-changing
// kind and pi lambda e^{2u0} for the regularized one.
double height_lower_bound(const CurvatureSpec& spec, double target) {
  switch (spec.kind) {
    case CurvatureKind::SignChangingPower:
      return std::max(0.5 * std::log(std::max(target, 1e-12) / kPi),
                      0.5 * std::log(spec.p + 2.0));
    case CurvatureKind::RegularizedPower:
      return 0.5 * std::log(std::max(target, 1e-12) / (kPi * spec.lambda));
    case CurvatureKind::Constant:
      return -5.0;
  }
  throw std::logic_error("unknown CurvatureKind");
}

// Measured map value used for bracketing. MaxRadius shots carry their final
// Lambda(r); shots that turned upward count as far below the window.
double bracket_value(const RadialProfile& profile) {
  if (profile.status == ShotStatus::Converged || profile.status == ShotStatus::MaxRadius)
    return profile.lam_back();
  return -kLambdaSphere;
}

unsigned worker_count(std::size_t jobs) {
  unsigned n = std::thread::hardware_concurrency();
  if (const char* env = std::getenv("GCURV_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) n = static_cast<unsigned>(v);
  }
  if (n == 0) n = 1;
  return static_cast<unsigned>(std::min<std::size_t>(n, jobs));
}

}  // namespace

ShootingResult lambda_of_u0(const CurvatureSpec& spec, double u0,
                            const IntegratorControls& controls) {
  auto profile = std::make_shared<RadialProfile>(integrate(spec, u0, controls));
  ShootingResult result;
  result.u0 = u0;
  result.status = profile->status;
  if (profile->status == ShotStatus::Converged) result.Lambda_hat = profile->lam_back();
  result.profile = std::move(profile);
  return result;
}

ShootingResult solve_for_lambda(const CurvatureSpec& spec, double target,
                                const IntegratorControls& controls, const SolverOptions& opts) {
  spec.validate();
  if (!std::isfinite(target)) throw std::invalid_argument("solve_for_lambda: target not finite");
  if (spec.kind == CurvatureKind::RegularizedPower &&
      !(target > 0.0 && target < kLambdaSphere))
    throw std::invalid_argument("solve_for_lambda: regularized target must lie in (0, 4*pi)");

  auto shoot = [&](double u0) { return lambda_of_u0(spec, u0, controls); };
  auto f_of = [&](const ShootingResult& res) { return bracket_value(*res.profile) - target; };

  double a = height_lower_bound(spec, target) + 1e-3;
  ShootingResult res_a = shoot(a);
  double fa = f_of(res_a);
  for (int k = 0; fa > 0.0 && k < 12; ++k) {  // hunt below the bound if needed
    a -= std::pow(2.0, k);
    res_a = shoot(a);
    fa = f_of(res_a);
  }
  if (fa > 0.0) throw NoBracketError("solve_for_lambda: map exceeds target on the whole bracket");

  double b = a, fb = fa;
  ShootingResult res_b = res_a;
  double width = 1.0;
  while (fb <= 0.0 && b < opts.bracket_hi) {
    b = std::min(b + width, opts.bracket_hi);
    width *= 2.0;
    res_b = shoot(b);
    fb = f_of(res_b);
  }
  if (fb <= 0.0) {
    if (std::abs(fb) <= opts.lambda_tol && res_b.status == ShotStatus::Converged) return res_b;
    throw NoBracketError("solve_for_lambda: no sign change up to the bracket ceiling");
  }

  // Brent: inverse quadratic / secant with bisection fallback.
  ShootingResult best = std::abs(fa) < std::abs(fb) ? res_a : res_b;
  double c = a, fc = fa, d = b - a, e = b - a;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    if (std::abs(f_of(best)) <= opts.lambda_tol) break;
    if (fb * fc > 0.0) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    double tol1 = 2e-15 * std::abs(b) + 1e-14;
    double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) break;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double s = fb / fa, pq, q;
      if (a == c) {
        pq = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        double qq = fa / fc, rr = fb / fc;
        pq = s * (2.0 * xm * qq * (qq - rr) - (b - a) * (rr - 1.0));
        q = (qq - 1.0) * (rr - 1.0) * (s - 1.0);
      }
      if (pq > 0.0) q = -q;
      pq = std::abs(pq);
      if (2.0 * pq < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
        e = d;
        d = pq / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
    ShootingResult res = shoot(b);
    fb = f_of(res);
    if (std::abs(fb) < std::abs(f_of(best))) best = res;
  }

  double best_f = f_of(best);
  if (std::abs(best_f) > opts.lambda_tol)
    throw SolveError("solve_for_lambda: bracket closed without reaching the target tolerance");
  if (best.status != ShotStatus::Converged)
    throw SolveError(
        "solve_for_lambda: the map attains the target but the shot does not stabilize "
        "(status=" + to_string(best.status) + ")");
  if (!std::isfinite(best.Lambda_hat)) best.Lambda_hat = best.profile->lam_back();
  return best;
}

std::vector<ShootingResult> sweep(const CurvatureSpec& spec, std::span<const double> u0_grid,
                                  const IntegratorControls& controls) {
  if (u0_grid.empty()) throw std::invalid_argument("sweep: empty u0 grid");
  std::vector<ShootingResult> results(u0_grid.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < u0_grid.size(); i = next.fetch_add(1))
      results[i] = lambda_of_u0(spec, u0_grid[i], controls);
  };
  unsigned n = worker_count(u0_grid.size());
  if (n <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n; ++k) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return results;
}

}  // namespace gcurv
