#include "gcurv/cli.hpp"

#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gcurv/io.hpp"

namespace gcurv {

namespace {

using nlohmann::json;

struct CommonOut {
  std::string out_path;         // empty = stdout
  std::string csv_path;         // tabular companion output
  std::string profile_csv;      // profile dump
  std::string profile_json;     // profile dump (self-describing)
};

void add_controls_flags(CLI::App* cmd, IntegratorControls& controls) {
  cmd->add_option("--rel-tol", controls.rel_tol, "integrator relative tolerance");
  cmd->add_option("--abs-tol", controls.abs_tol, "integrator absolute tolerance");
  cmd->add_option("--r-start", controls.r_start, "series start radius cap");
  cmd->add_option("--r-max", controls.r_max, "outer integration radius");
  cmd->add_option("--u-floor", controls.u_floor, "abort threshold for u");
  cmd->add_option("--stab-window", controls.stabilization_window,
                  "stabilization window (decades of r)");
  cmd->add_option("--stab-tol", controls.stab_tol, "max Lambda variation over the window");
  cmd->add_flag("--stop-on-stabilization", controls.stop_on_stabilization,
                "stop integrating once Lambda(r) stabilizes");
}

void add_out_flags(CLI::App* cmd, CommonOut& out, bool with_profile = false) {
  cmd->add_option("--out", out.out_path, "write the JSON result here instead of stdout");
  cmd->add_option("--csv-out", out.csv_path, "write a CSV companion table");
  if (with_profile) {
    cmd->add_option("--profile-out", out.profile_csv, "dump the profile as CSV");
    cmd->add_option("--profile-json", out.profile_json, "dump the profile as JSON");
  }
}

void emit(const CommonOut& out, const std::string& command, const json& params, json result) {
  json doc{{"schema", kResultSchema},
           {"command", command},
           {"params", params},
           {"result", std::move(result)}};
  std::string text = doc.dump(2);
  text += '\n';
  if (out.out_path.empty())
    std::cout << text;
  else
    write_text_file(out.out_path, text);
}

void dump_profile(const CommonOut& out, const RadialProfile& profile) {
  if (!out.profile_csv.empty()) write_text_file(out.profile_csv, profile_to_csv(profile));
  if (!out.profile_json.empty())
    write_text_file(out.profile_json, profile_to_json(profile).dump(2) + "\n");
}

json diagnostics_block(const RadialProfile& profile, const DiagnosticsOptions& opts) {
  json block;
  if (profile.status == ShotStatus::Converged) {
    FarFieldFit fit = farfield_fit(profile, opts.fit_lo, opts.fit_hi);
    IntegralReport report = pohozaev_quantities(profile, fit, opts.tail_margin);
    block["integrals"] = report;
    block["diagnostics"] = compute_diagnostics(profile, &report, opts);
  } else {
    block["integrals"] = nullptr;
    block["diagnostics"] = compute_diagnostics(profile, nullptr, opts);
  }
  return block;
}

int config_error(const std::string& message) {
  std::cerr << "configuration error: " << message << "\n";
  return 2;
}

int solver_error(const std::string& message) {
  std::cerr << "solver failure: " << message << "\n";
  return 1;
}

std::vector<double> scaled(std::vector<double> v, double factor) {
  for (double& x : v) x *= factor;
  return v;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"radial solver and verification toolkit for -Delta u = (1-|x|^p) e^{2u}"};
  app.require_subcommand(1);

  // --- solve ------------------------------------------------------------
  double p = 1.0, target_over_pi = 3.5, u0 = 1.0, k0 = 1.0, reg_lambda = 1.0;
  IntegratorControls controls;
  DiagnosticsOptions diag_opts;
  CommonOut out;
  std::string kind = "sign";

  auto* solve = app.add_subcommand("solve", "prescribe Lambda and run full diagnostics");
  solve->add_option("--p", p, "power exponent")->required();
  solve->add_option("--lambda-over-pi", target_over_pi, "target total curvature / pi")->required();
  solve->add_option("--fit-lo", diag_opts.fit_lo, "far-field fit window start");
  solve->add_option("--fit-hi", diag_opts.fit_hi, "far-field fit window end");
  add_controls_flags(solve, controls);
  add_out_flags(solve, out, true);

  // --- shoot ------------------------------------------------------------
  auto* shoot = app.add_subcommand("shoot", "single shot u(0) -> Lambda");
  shoot->add_option("--u0", u0, "initial height u(0)")->required();
  shoot->add_option("--kind", kind, "curvature kind: sign | reg | const");
  shoot->add_option("--p", p, "power exponent (sign, reg)");
  shoot->add_option("--lambda", reg_lambda, "regularization level (reg)");
  shoot->add_option("--k0", k0, "constant curvature value (const)");
  add_controls_flags(shoot, controls);
  add_out_flags(shoot, out, true);

  // --- sweep ------------------------------------------------------------
  double u0_min = 1.0, u0_max = 15.0;
  int u0_count = 29;
  std::vector<double> u0_list;
  auto* sweep_cmd = app.add_subcommand("sweep", "map u(0) -> Lambda over a grid");
  sweep_cmd->add_option("--p", p, "power exponent")->required();
  sweep_cmd->add_option("--u0-min", u0_min, "grid start");
  sweep_cmd->add_option("--u0-max", u0_max, "grid end");
  sweep_cmd->add_option("--u0-count", u0_count, "grid size");
  sweep_cmd->add_option("--u0", u0_list, "explicit grid (overrides min/max/count)");
  add_controls_flags(sweep_cmd, controls);
  add_out_flags(sweep_cmd, out);

  // --- pohozaev ----------------------------------------------------------
  std::string profile_path;
  auto* poh = app.add_subcommand("pohozaev", "diagnostics on a stored profile");
  poh->add_option("--profile", profile_path, "profile JSON document")->required();
  poh->add_option("--fit-lo", diag_opts.fit_lo, "far-field fit window start");
  poh->add_option("--fit-hi", diag_opts.fit_hi, "far-field fit window end");
  add_out_flags(poh, out);

  // --- blowup -----------------------------------------------------------
  std::vector<double> targets_over_pi = {3.9, 3.99, 3.999};
  BlowupOptions blow_opts;
  auto* blow = app.add_subcommand("blowup", "rescaling diagnostics along targets toward 4*pi");
  blow->add_option("--p", p, "power exponent");
  blow->add_option("--targets-over-pi", targets_over_pi, "increasing targets / pi");
  blow->add_option("--r-eta", blow_opts.R_eta, "rescaled comparison radius");
  blow->add_option("--delta", blow_opts.delta, "mass concentration radius");
  add_controls_flags(blow, controls);
  add_out_flags(blow, out);

  // --- continue ---------------------------------------------------------
  std::vector<double> schedule = {1.0, 0.3, 0.1, 0.03, 0.01};
  ContinuationOptions cont_opts;
  auto* cont = app.add_subcommand("continue", "regularized family and final rescale");
  cont->add_option("--p", p, "power exponent");
  cont->add_option("--lambda-over-pi", target_over_pi, "target total curvature / pi");
  cont->add_option("--schedule", schedule, "decreasing lambda schedule");
  cont->add_option("--r-compare", cont_opts.r_compare, "comparison radius for match_error");
  add_controls_flags(cont, controls);
  add_out_flags(cont, out);

  // --- kelvin -----------------------------------------------------------
  std::vector<double> s_grid = {1e-1, 1e-2, 1e-3, 1e-4};
  bool have_solve_args = false;
  auto* kel = app.add_subcommand("kelvin", "Kelvin transform of a profile");
  kel->add_option("--profile", profile_path, "profile JSON document");
  auto* kel_p = kel->add_option("--p", p, "power exponent (solve inline)");
  kel->add_option("--lambda-over-pi", target_over_pi, "target / pi (solve inline)");
  kel->add_option("--s", s_grid, "s grid in (0,1]");
  add_controls_flags(kel, controls);
  add_out_flags(kel, out);

  // --- oracle -----------------------------------------------------------
  std::vector<double> oracle_u0 = {0.0, std::log(2.0), 3.0};
  double oracle_max_err = 1e-8, oracle_lambda_tol = 1e-4;
  auto* oracle = app.add_subcommand("oracle", "bubble self-test against the closed form");
  oracle->add_option("--u0", oracle_u0, "initial heights to test");
  oracle->add_option("--max-err", oracle_max_err, "max allowed |u - exact|");
  oracle->add_option("--lambda-tol", oracle_lambda_tol, "relative Lambda tolerance");
  add_controls_flags(oracle, controls);
  add_out_flags(oracle, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      app.exit(e);
      return 0;
    }
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (solve->parsed()) {
      Window win = window(p);
      if (!win.nonempty)
        return config_error("the admissible window is empty for p >= 2 (no solutions exist)");
      double target = target_over_pi * kPi;
      if (!(target > win.lambda_star && target < win.lambda_sph))
        return config_error("target must lie in the open window (" +
                            format_double(win.lambda_star / kPi) + "*pi, 4*pi)");
      ShootingResult res;
      try {
        res = solve_for_lambda(CurvatureSpec::sign_changing(p), target, controls);
      } catch (const std::runtime_error& e) {
        return solver_error(e.what());
      }
      json result{{"shooting", res}, {"window", win}};
      result.update(diagnostics_block(*res.profile, diag_opts));
      emit(out, "solve",
           json{{"p", p}, {"target_over_pi", target_over_pi}, {"controls", controls}}, result);
      dump_profile(out, *res.profile);
      return 0;
    }

    if (shoot->parsed()) {
      CurvatureSpec spec;
      if (kind == "sign")
        spec = CurvatureSpec::sign_changing(p);
      else if (kind == "reg")
        spec = CurvatureSpec::regularized(p, reg_lambda);
      else if (kind == "const")
        spec = CurvatureSpec::constant(k0);
      else
        return config_error("unknown --kind (expected sign | reg | const)");
      ShootingResult res = lambda_of_u0(spec, u0, controls);
      emit(out, "shoot", json{{"spec", spec}, {"u0", u0}, {"controls", controls}},
           json{{"shooting", res}});
      dump_profile(out, *res.profile);
      return res.status == ShotStatus::StepFailure ? 1 : 0;
    }

    if (sweep_cmd->parsed()) {
      std::vector<double> grid = u0_list;
      if (grid.empty()) {
        if (u0_count < 1) return config_error("--u0-count must be positive");
        for (int i = 0; i < u0_count; ++i)
          grid.push_back(u0_count == 1 ? u0_min
                                       : u0_min + (u0_max - u0_min) * i / (u0_count - 1));
      }
      auto results = sweep(CurvatureSpec::sign_changing(p), grid, controls);
      json arr = json::array();
      for (auto& r : results) arr.push_back(r);
      emit(out, "sweep", json{{"p", p}, {"u0_grid", grid}, {"controls", controls}},
           json{{"results", arr}});
      if (!out.csv_path.empty()) write_text_file(out.csv_path, sweep_to_csv(results));
      return 0;
    }

    if (poh->parsed()) {
      RadialProfile profile = profile_from_json(json::parse(read_text_file(profile_path)));
      if (profile.status != ShotStatus::Converged)
        return solver_error("stored profile did not converge; refusing diagnostics");
      json result = diagnostics_block(profile, diag_opts);
      emit(out, "pohozaev", json{{"profile", profile_path}}, result);
      return 0;
    }

    if (blow->parsed()) {
      std::vector<double> targets = scaled(targets_over_pi, kPi);
      std::vector<BlowupDiagnostics> diags;
      try {
        diags = blowup_sweep(p, targets, controls, blow_opts);
      } catch (const std::runtime_error& e) {
        return solver_error(e.what());
      }
      json arr = json::array();
      for (auto& d : diags) arr.push_back(d);
      emit(out, "blowup",
           json{{"p", p}, {"targets_over_pi", targets_over_pi}, {"controls", controls}},
           json{{"results", arr}});
      if (!out.csv_path.empty()) write_text_file(out.csv_path, blowup_to_csv(diags));
      return 0;
    }

    if (cont->parsed()) {
      double target = target_over_pi * kPi;
      ContinuationResult result;
      try {
        result = run_continuation(p, target, schedule, controls, cont_opts);
      } catch (const std::runtime_error& e) {
        return solver_error(e.what());
      }
      emit(out, "continue",
           json{{"p", p},
                {"target_over_pi", target_over_pi},
                {"schedule", schedule},
                {"controls", controls}},
           json(result));
      if (!out.csv_path.empty()) write_text_file(out.csv_path, continuation_to_csv(result));
      return 0;
    }

    if (kel->parsed()) {
      RadialProfile profile;
      if (!profile_path.empty()) {
        profile = profile_from_json(json::parse(read_text_file(profile_path)));
      } else if (!kel_p->empty()) {
        double target = target_over_pi * kPi;
        ShootingResult res;
        try {
          res = solve_for_lambda(CurvatureSpec::sign_changing(p), target, controls);
        } catch (const std::runtime_error& e) {
          return solver_error(e.what());
        }
        profile = *res.profile;
      } else {
        return config_error("kelvin needs --profile or --p/--lambda-over-pi");
      }
      double lambda_hat = profile.lam_back();
      auto pts = kelvin_transform(profile, lambda_hat, s_grid);
      json arr = json::array();
      for (auto& [s, v] : pts) arr.push_back(json::array({s, v}));
      emit(out, "kelvin", json{{"s_grid", s_grid}},
           json{{"lambda_hat", lambda_hat}, {"points", arr}});
      return 0;
    }

    if (oracle->parsed()) {
      bool all_ok = true;
      json arr = json::array();
      for (double h : oracle_u0) {
        RadialProfile profile = integrate(CurvatureSpec::constant(1.0), h, controls);
        double q = std::exp(2.0 * h) / 4.0;
        double max_err = 0.0;
        for (std::size_t i = 0; i < profile.size(); ++i) {
          if (profile.r[i] > 100.0) break;
          double exact = h - std::log1p(q * profile.r[i] * profile.r[i]);
          max_err = std::max(max_err, std::abs(profile.u[i] - exact));
        }
        double lambda_rel = std::abs(profile.lam_back() - kLambdaSphere) / kLambdaSphere;
        bool ok = profile.status == ShotStatus::Converged && max_err <= oracle_max_err &&
                  lambda_rel <= oracle_lambda_tol;
        all_ok = all_ok && ok;
        arr.push_back(json{{"u0", h},
                           {"max_abs_err", max_err},
                           {"lambda_rel_err", lambda_rel},
                           {"status", to_string(profile.status)},
                           {"ok", ok}});
      }
      emit(out, "oracle", json{{"u0", oracle_u0}, {"max_err", oracle_max_err}},
           json{{"cases", arr}, {"ok", all_ok}});
      return all_ok ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    return config_error(e.what());
  } catch (const std::out_of_range& e) {
    return config_error(e.what());
  } catch (const std::exception& e) {
    return solver_error(e.what());
  }
  return config_error("no subcommand given");
}

}  // namespace gcurv
