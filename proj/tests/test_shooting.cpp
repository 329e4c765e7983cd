#include <doctest.h>
#include <cstdlib>

#include <cmath>
#include <vector>

#include "gcurv/shooting.hpp"

using namespace gcurv;

TEST_CASE("every constant-curvature shot carries total curvature 4 pi") {
  for (double u0 : {-1.0, 0.3, 2.0}) {
    CAPTURE(u0);
    ShootingResult res = lambda_of_u0(CurvatureSpec::constant(1.0), u0, {});
    REQUIRE(res.status == ShotStatus::Converged);
    CHECK(std::abs(res.Lambda_hat - kLambdaSphere) <= 1e-4 * kLambdaSphere);
  }
}

TEST_CASE("large initial height approaches 4 pi from below") {
  ShootingResult res = lambda_of_u0(CurvatureSpec::sign_changing(1.0), 10.0, {});
  REQUIRE(res.status == ShotStatus::Converged);
  CHECK(res.Lambda_hat < kLambdaSphere);
  CHECK(res.Lambda_hat > 3.99 * kPi);
}

TEST_CASE("heights below the mass lower bound do not converge in the window") {
  // log sqrt(p+2) ~ 0.549 for p = 1
  ShootingResult res = lambda_of_u0(CurvatureSpec::sign_changing(1.0), 0.4, {});
  bool in_window_solution =
      res.status == ShotStatus::Converged && res.Lambda_hat >= 3.0 * kPi - 1e-3;
  CHECK_FALSE(in_window_solution);
}

TEST_CASE("solve_for_lambda prescribes the total curvature") {
  SolverOptions opts;
  ShootingResult res = solve_for_lambda(CurvatureSpec::sign_changing(1.0), 3.5 * kPi, {}, opts);
  REQUIRE(res.status == ShotStatus::Converged);
  CHECK(std::abs(res.Lambda_hat - 3.5 * kPi) <= opts.lambda_tol);

  // idempotence: re-shooting the returned height reproduces Lambda_hat
  ShootingResult again = lambda_of_u0(CurvatureSpec::sign_changing(1.0), res.u0, {});
  CHECK(std::abs(again.Lambda_hat - res.Lambda_hat) <= 2.0 * opts.lambda_tol);
}

TEST_CASE("targets at or above 4 pi have no bracket") {
  CHECK_THROWS_AS(solve_for_lambda(CurvatureSpec::sign_changing(1.0), 4.1 * kPi, {}),
                  NoBracketError);
}

TEST_CASE("the endpoint is approached through a descending target sequence") {
  // (2+p) pi itself is only an infimum; targets stepping down toward it keep
  // succeeding, with the returned heights decreasing toward the critical one.
  double prev_u0 = std::numeric_limits<double>::infinity();
  for (double target : {3.2 * kPi, 3.1 * kPi, 3.05 * kPi}) {
    ShootingResult res = solve_for_lambda(CurvatureSpec::sign_changing(1.0), target, {});
    CHECK(res.status == ShotStatus::Converged);
    CHECK(res.u0 < prev_u0);
    prev_u0 = res.u0;
  }
}

TEST_CASE("window containment over a sweep") {
  std::vector<double> grid;
  for (double u0 = 1.0; u0 <= 10.0; u0 += 0.5) grid.push_back(u0);
  auto results = sweep(CurvatureSpec::sign_changing(1.0), grid, {});
  REQUIRE(results.size() == grid.size());
  int converged = 0;
  for (const auto& res : results) {
    if (res.status != ShotStatus::Converged) continue;
    ++converged;
    CHECK(res.Lambda_hat > 3.0 * kPi - 1e-3);
    CHECK(res.Lambda_hat < 4.0 * kPi + 1e-3);
  }
  CHECK(converged > 0);
}

TEST_CASE("extending the height grid raises the top of the measured map") {
  std::vector<double> lo_grid, hi_grid;
  for (double u0 = 3.0; u0 <= 6.0; u0 += 1.0) lo_grid.push_back(u0);
  for (double u0 = 3.0; u0 <= 10.0; u0 += 1.0) hi_grid.push_back(u0);
  auto max_lambda = [](const std::vector<ShootingResult>& results) {
    double best = -1.0;
    for (const auto& res : results)
      if (res.status == ShotStatus::Converged) best = std::max(best, res.Lambda_hat);
    return best;
  };
  auto spec = CurvatureSpec::sign_changing(1.0);
  CHECK(max_lambda(sweep(spec, hi_grid, {})) > max_lambda(sweep(spec, lo_grid, {})));
}

TEST_CASE("no admissible curvature for p >= 2") {
  std::vector<double> grid;
  for (double u0 = 1.0; u0 <= 10.0; u0 += 1.0) grid.push_back(u0);
  auto results = sweep(CurvatureSpec::sign_changing(2.5), grid, {});
  for (const auto& res : results) {
    bool in_would_be_window = res.status == ShotStatus::Converged &&
                              res.Lambda_hat >= 4.5 * kPi && res.Lambda_hat < kLambdaSphere;
    CHECK_FALSE(in_would_be_window);
  }
}

TEST_CASE("sweep rejects an empty grid and preserves order") {
  CHECK_THROWS_AS(sweep(CurvatureSpec::sign_changing(1.0), std::vector<double>{}, {}),
                  std::invalid_argument);
  std::vector<double> grid = {4.0, 3.0, 5.0};
  auto results = sweep(CurvatureSpec::sign_changing(1.0), grid, {});
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(results[i].u0 == grid[i]);
}

TEST_CASE("worker count does not change sweep results") {
  std::vector<double> grid = {2.0, 3.0, 4.0, 5.0, 6.0, 7.0};
  auto spec = CurvatureSpec::sign_changing(1.0);
  setenv("GCURV_WORKERS", "1", 1);
  auto serial = sweep(spec, grid, {});
  setenv("GCURV_WORKERS", "4", 1);
  auto parallel = sweep(spec, grid, {});
  unsetenv("GCURV_WORKERS");
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].status == parallel[i].status);
    if (serial[i].status == ShotStatus::Converged)
      CHECK(serial[i].Lambda_hat == parallel[i].Lambda_hat);
  }
}

TEST_CASE("non-converged results carry no Lambda_hat") {
  ShootingResult res = lambda_of_u0(CurvatureSpec::sign_changing(1.0), -5.0, {});
  CHECK(res.status != ShotStatus::Converged);
  CHECK(std::isnan(res.Lambda_hat));
  CHECK(res.profile != nullptr);
}
