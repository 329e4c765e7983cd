#include <doctest.h>

#include <cmath>

#include "gcurv/diagnostics.hpp"
#include "gcurv/shooting.hpp"
#include "test_helpers.hpp"

using namespace gcurv;

namespace {

const RadialProfile& solution_35() {
  static RadialProfile profile =
      *solve_for_lambda(CurvatureSpec::sign_changing(1.0), 3.5 * kPi, {}).profile;
  return profile;
}

}  // namespace

TEST_CASE("pohozaev residual arithmetic") {
  IntegralReport at_sphere;
  at_sphere.Lambda_hat = kLambdaSphere;
  at_sphere.P_hat = 0.0;
  CHECK(pohozaev_residual(at_sphere, 1.0) == doctest::Approx(0.0));

  IntegralReport at_endpoint;
  at_endpoint.Lambda_hat = 3.0 * kPi;
  at_endpoint.P_hat = 1.5 * kPi;
  CHECK(pohozaev_residual(at_endpoint, 1.0) == doctest::Approx(0.0).epsilon(1e-14));

  IntegralReport no_p;
  CHECK_THROWS_AS(pohozaev_residual(no_p, 1.0), std::invalid_argument);
}

TEST_CASE("end-to-end pohozaev and volume residuals are small") {
  const auto& profile = solution_35();
  FarFieldFit fit = farfield_fit(profile, 1e3, 1e6);
  IntegralReport report = pohozaev_quantities(profile, fit);
  CHECK(std::abs(pohozaev_residual(report, 1.0)) < 1e-3);
  CHECK(std::abs(volume_residual(report, 1.0)) < 1e-3);
}

TEST_CASE("far-field fit on synthetic and closed-form profiles") {
  // u = -2 log r exactly: slope -2, C = 0, rms 0.
  auto synthetic = testing::make_profile(
      CurvatureSpec::sign_changing(1.0), 0.0, [](double r) { return -2.0 * std::log(r); },
      [](double) { return -2.0; }, 1.0, 1e7, 300);
  FarFieldFit fit = farfield_fit(synthetic, 1e3, 1e6);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(std::abs(fit.C) < 1e-10);
  CHECK(fit.rms < 1e-12);

  // bubble: u ~ log 2 - 2 log r far out.
  RadialProfile bubble = integrate(CurvatureSpec::constant(1.0), std::log(2.0), {});
  FarFieldFit bfit = farfield_fit(bubble, 1e3, 1e5);
  CHECK(bfit.slope == doctest::Approx(-2.0).epsilon(1e-3));
  CHECK(bfit.C == doctest::Approx(std::log(2.0)).epsilon(1e-3));

  // prescribed solution: slope -Lambda/2pi within 2%.
  FarFieldFit sfit = farfield_fit(solution_35(), 1e3, 1e6);
  CHECK(sfit.slope == doctest::Approx(-1.75).epsilon(0.02));

  CHECK_THROWS_AS(farfield_fit(bubble, 1e3, 2e3), std::invalid_argument);
}

TEST_CASE("kelvin transform cancels a pure-log profile exactly") {
  double lambda = 3.4 * kPi;
  double slope = lambda / (2.0 * kPi);
  auto synthetic = testing::make_profile(
      CurvatureSpec::sign_changing(1.0), 0.0,
      [slope](double r) { return -slope * std::log(r); }, [slope](double) { return -slope; },
      1.0, 1e8, 400);
  std::vector<double> s_grid = {1e-1, 1e-3, 1e-6};
  for (auto& [s, ut] : kelvin_transform(synthetic, lambda, s_grid)) CHECK(std::abs(ut) < 1e-10);
}

TEST_CASE("kelvin transform of a solution tends to the additive constant") {
  const auto& profile = solution_35();
  FarFieldFit fit = farfield_fit(profile, 1e3, 1e6);
  std::vector<double> s_grid = {1e-1, 1e-2, 1e-3, 1e-4};
  auto kt = kelvin_transform(profile, profile.lam_back(), s_grid);
  // successive differences contract toward the finite limit C
  for (std::size_t i = 0; i + 2 < kt.size(); ++i)
    CHECK(std::abs(kt[i + 2].second - kt[i + 1].second) <
          std::abs(kt[i + 1].second - kt[i].second));
  CHECK(std::abs(kt[3].second - kt[2].second) <= 0.01 * std::abs(fit.C));
  for (double s : {1e-4, 1e-5, 1e-6})
    CHECK(kelvin_transform(profile, profile.lam_back(), std::vector<double>{s})[0].second ==
          doctest::Approx(fit.C).epsilon(0.01));
  CHECK_THROWS_AS(kelvin_transform(profile, profile.lam_back(), std::vector<double>{1e-12}),
                  std::out_of_range);
  CHECK_THROWS_AS(kelvin_transform(profile, profile.lam_back(), std::vector<double>{2.0}),
                  std::out_of_range);
}

TEST_CASE("kelvin transform near the endpoint drops without a limit") {
  auto res = solve_for_lambda(CurvatureSpec::sign_changing(1.0), 3.001 * kPi, {});
  std::vector<double> s_grid = {1e-1, 1e-2, 1e-3, 1e-4};
  auto kt = kelvin_transform(*res.profile, res.profile->lam_back(), s_grid);
  for (std::size_t i = 0; i + 1 < kt.size(); ++i) CHECK(kt[i + 1].second < kt[i].second);
}

TEST_CASE("gradient decay on synthetic, bubble and solution profiles") {
  auto synthetic = testing::make_profile(
      CurvatureSpec::sign_changing(1.0), 0.0, [](double r) { return -1.3 * std::log(r); },
      [](double) { return -1.3; }, 1.0, 1e8, 401);
  CHECK(gradient_decay(synthetic, 1e2, 1e6) == doctest::Approx(1.3));

  RadialProfile bubble = integrate(CurvatureSpec::constant(1.0), std::log(2.0), {});
  CHECK(gradient_decay(bubble, 1e2, 1e6) == doctest::Approx(2.0).epsilon(1e-3));

  double lam = solution_35().lam_back();
  CHECK(gradient_decay(solution_35(), 1e2, 1e6) <= lam / (2.0 * kPi) + 0.05);
}

TEST_CASE("log-log ratio recovers synthetic endpoint decay") {
  double p = 1.0;
  auto mk = [&](double coeff) {
    return testing::make_profile(
        CurvatureSpec::sign_changing(p), 0.0,
        [coeff](double r) { return -1.5 * std::log(r) - coeff * std::log(std::log(r)); },
        [coeff](double r) { return -1.5 - coeff / std::log(r); }, 10.0, 1e8, 400);
  };
  std::vector<double> radii = {1e3, 1e5, 1e7};
  for (auto& [r, q] : loglog_ratio(mk(1.0), p, radii, /*endpoint_margin=*/0.5))
    CHECK(q == doctest::Approx(-1.0).epsilon(1e-10));
  for (auto& [r, q] : loglog_ratio(mk(1.3), p, radii, 0.5))
    CHECK(q == doctest::Approx(-1.3).epsilon(1e-10));

  // refuses when Lambda_hat is far from the endpoint
  CHECK_THROWS_AS(loglog_ratio(solution_35(), p, radii), std::invalid_argument);
  // refuses radii below e^2
  CHECK_THROWS_AS(loglog_ratio(mk(1.0), p, std::vector<double>{2.0}, 0.5),
                  std::invalid_argument);
}

TEST_CASE("full diagnostics report on a converged solution") {
  const auto& profile = solution_35();
  FarFieldFit fit = farfield_fit(profile, 1e3, 1e6);
  IntegralReport report = pohozaev_quantities(profile, fit);
  DiagnosticsReport diag = compute_diagnostics(profile, &report);
  REQUIRE(diag.pohozaev_residual.has_value());
  CHECK(std::abs(*diag.pohozaev_residual) < 1e-3);
  REQUIRE(diag.volume_residual.has_value());
  CHECK(std::abs(*diag.volume_residual) < 1e-3);
  CHECK(diag.monotone);
  CHECK(diag.farfield.alpha_fitted);  // 3.5 pi is far enough from the endpoint
  CHECK_FALSE(diag.loglog_ratio.has_value());
  CHECK(std::isfinite(diag.kelvin_sup));
  CHECK(diag.gradient_bound > 0.0);
}

TEST_CASE("alpha is gated off near the endpoint") {
  auto res = solve_for_lambda(CurvatureSpec::sign_changing(1.0), 3.05 * kPi, {});
  DiagnosticsReport diag = compute_diagnostics(*res.profile, nullptr);
  CHECK_FALSE(diag.farfield.alpha_fitted);
}
