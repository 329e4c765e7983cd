#include "gcurv/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace gcurv {

using nlohmann::json;

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

double parse_double(std::string_view s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw std::invalid_argument("bad numeric field: " + std::string(s));
  return v;
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double field_double(const json& j, const char* key) {
  const auto& v = j.at(key);
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

json optional_to_json(const std::optional<double>& v) {
  return v ? json(*v) : json(nullptr);
}

json pairs_to_json(const std::vector<std::pair<double, double>>& pts) {
  json arr = json::array();
  for (auto& [x, y] : pts) arr.push_back(json::array({x, y}));
  return arr;
}

}  // namespace

void to_json(json& j, const CurvatureSpec& spec) {
  j = json{{"kind", to_string(spec.kind)}};
  switch (spec.kind) {
    case CurvatureKind::SignChangingPower: j["p"] = spec.p; break;
    case CurvatureKind::RegularizedPower:
      j["p"] = spec.p;
      j["lambda"] = spec.lambda;
      break;
    case CurvatureKind::Constant: j["k0"] = spec.k0; break;
  }
}

void from_json(const json& j, CurvatureSpec& spec) {
  spec.kind = curvature_kind_from_string(j.at("kind").get<std::string>());
  spec.p = j.value("p", 0.0);
  spec.lambda = j.value("lambda", 0.0);
  spec.k0 = j.value("k0", 0.0);
  spec.validate();
}

void to_json(json& j, const IntegratorControls& controls) {
  j = json{{"rel_tol", controls.rel_tol},
           {"abs_tol", controls.abs_tol},
           {"r_start", controls.r_start},
           {"r_max", controls.r_max},
           {"u_floor", controls.u_floor},
           {"stabilization_window", controls.stabilization_window},
           {"stab_tol", controls.stab_tol},
           {"stop_on_stabilization", controls.stop_on_stabilization}};
}

void from_json(const json& j, IntegratorControls& controls) {
  controls.rel_tol = j.at("rel_tol").get<double>();
  controls.abs_tol = j.at("abs_tol").get<double>();
  controls.r_start = j.at("r_start").get<double>();
  controls.r_max = j.at("r_max").get<double>();
  controls.u_floor = j.at("u_floor").get<double>();
  controls.stabilization_window = j.at("stabilization_window").get<double>();
  controls.stab_tol = j.at("stab_tol").get<double>();
  controls.stop_on_stabilization = j.value("stop_on_stabilization", false);
  controls.validate();
}

void to_json(json& j, const Window& window) {
  j = json{{"lambda_star", window.lambda_star},
           {"lambda_star_over_pi", window.lambda_star / kPi},
           {"lambda_sph", window.lambda_sph},
           {"lambda_sph_over_pi", window.lambda_sph / kPi},
           {"nonempty", window.nonempty}};
}

void to_json(json& j, const FarFieldFit& fit) {
  j = json{{"slope", fit.slope},
           {"C", fit.C},
           {"alpha", fit.alpha_fitted ? json(fit.alpha) : json(nullptr)},
           {"fit_window", json::array({fit.r_lo, fit.r_hi})},
           {"rms", fit.rms}};
}

void to_json(json& j, const IntegralReport& report) {
  j = json{{"lambda_hat", report.Lambda_hat},
           {"lambda_hat_over_pi", report.Lambda_hat / kPi},
           {"v_hat", report.V_hat},
           {"p_hat", optional_to_json(report.P_hat)},
           {"tail_fraction", report.tail_fraction},
           {"converged", report.converged},
           {"truncation_radius", report.R}};
}

void to_json(json& j, const DiagnosticsReport& report) {
  j = json{{"pohozaev_residual", optional_to_json(report.pohozaev_residual)},
           {"volume_residual", optional_to_json(report.volume_residual)},
           {"farfield", report.farfield},
           {"gradient_bound", report.gradient_bound},
           {"kelvin_sup", report.kelvin_sup},
           {"loglog_ratio", optional_to_json(report.loglog_ratio)},
           {"monotone", report.monotone}};
}

void to_json(json& j, const ShootingResult& result) {
  j = json{{"u0", result.u0},
           {"lambda_hat", number_or_null(result.Lambda_hat)},
           {"lambda_hat_over_pi", number_or_null(result.Lambda_hat / kPi)},
           {"status", to_string(result.status)}};
}

void to_json(json& j, const BlowupDiagnostics& diag) {
  j = json{{"target", number_or_null(diag.target)},
           {"target_over_pi", number_or_null(diag.target / kPi)},
           {"u0", diag.u0},
           {"mu", diag.mu},
           {"lambda_hat", diag.lambda_hat},
           {"sup_dist", diag.sup_dist},
           {"grad_dist", diag.grad_dist},
           {"delta", diag.delta},
           {"mass_in_delta", diag.mass_in_delta},
           {"mass_fraction", diag.mass_fraction},
           {"eta", pairs_to_json(diag.eta)}};
}

void to_json(json& j, const ContinuationStep& step) {
  j = json{{"lambda", step.lambda},
           {"u0", step.u0},
           {"r_lambda", step.r_lambda},
           {"ratio", step.ratio},
           {"lambda_e2u0", 1.0 / (step.r_lambda * step.r_lambda)},
           {"eta", pairs_to_json(step.eta)}};
}

void to_json(json& j, const ContinuationResult& result) {
  j = json{{"p", result.p},
           {"target", result.target},
           {"target_over_pi", result.target / kPi},
           {"steps", result.steps},
           {"mu_hat", result.mu_hat},
           {"rho", result.rho},
           {"match_error", result.match_error},
           {"final_profile", pairs_to_json(result.final_profile)}};
}

nlohmann::json profile_to_json(const RadialProfile& profile) {
  json nodes{{"r", profile.r}, {"u", profile.u},     {"w", profile.w},
             {"vol", profile.vol}, {"pw", profile.pw}};
  return json{{"schema", kProfileSchema},
              {"spec", profile.spec},
              {"controls", profile.controls},
              {"u0", profile.u0},
              {"status", to_string(profile.status)},
              {"nodes", nodes}};
}

RadialProfile profile_from_json(const json& j) {
  if (j.value("schema", "") != kProfileSchema)
    throw std::invalid_argument("not a gcurv profile document");
  RadialProfile profile;
  profile.spec = j.at("spec").get<CurvatureSpec>();
  profile.controls = j.at("controls").get<IntegratorControls>();
  profile.u0 = j.at("u0").get<double>();
  profile.status = shot_status_from_string(j.at("status").get<std::string>());
  const auto& nodes = j.at("nodes");
  profile.r = nodes.at("r").get<std::vector<double>>();
  profile.u = nodes.at("u").get<std::vector<double>>();
  profile.w = nodes.at("w").get<std::vector<double>>();
  profile.vol = nodes.at("vol").get<std::vector<double>>();
  profile.pw = nodes.at("pw").get<std::vector<double>>();
  std::size_t n = profile.r.size();
  if (profile.u.size() != n || profile.w.size() != n || profile.vol.size() != n ||
      profile.pw.size() != n || n == 0)
    throw std::invalid_argument("profile node arrays are inconsistent");
  return profile;
}

std::string profile_to_csv(const RadialProfile& profile) {
  std::string out = "r,u,w,lam,vol,pw\n";
  for (std::size_t i = 0; i < profile.size(); ++i) {
    out += format_double(profile.r[i]);
    out += ',';
    out += format_double(profile.u[i]);
    out += ',';
    out += format_double(profile.w[i]);
    out += ',';
    out += format_double(profile.lam(i));
    out += ',';
    out += format_double(profile.vol[i]);
    out += ',';
    out += format_double(profile.pw[i]);
    out += '\n';
  }
  return out;
}

ProfileTable profile_table_from_csv(std::string_view csv) {
  ProfileTable table;
  std::size_t pos = 0;
  bool header = true;
  while (pos < csv.size()) {
    std::size_t eol = csv.find('\n', pos);
    std::string_view line = csv.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = eol == std::string_view::npos ? csv.size() : eol + 1;
    if (line.empty()) continue;
    if (header) {
      if (line != "r,u,w,lam,vol,pw") throw std::invalid_argument("unexpected CSV header");
      header = false;
      continue;
    }
    double v[6];
    std::size_t start = 0;
    for (int k = 0; k < 6; ++k) {
      std::size_t comma = k < 5 ? line.find(',', start) : line.size();
      if (comma == std::string_view::npos) throw std::invalid_argument("short CSV row");
      v[k] = parse_double(line.substr(start, comma - start));
      start = comma + 1;
    }
    table.r.push_back(v[0]);
    table.u.push_back(v[1]);
    table.w.push_back(v[2]);
    table.lam.push_back(v[3]);
    table.vol.push_back(v[4]);
    table.pw.push_back(v[5]);
  }
  return table;
}

std::string sweep_to_csv(std::span<const ShootingResult> results) {
  std::string out = "u0,lambda_hat,lambda_hat_over_pi,status\n";
  for (const auto& res : results) {
    out += format_double(res.u0);
    out += ',';
    out += std::isfinite(res.Lambda_hat) ? format_double(res.Lambda_hat) : "nan";
    out += ',';
    out += std::isfinite(res.Lambda_hat) ? format_double(res.Lambda_hat / kPi) : "nan";
    out += ',';
    out += to_string(res.status);
    out += '\n';
  }
  return out;
}

std::string blowup_to_csv(std::span<const BlowupDiagnostics> diags) {
  std::string out = "target,u0,mu,sup_dist,grad_dist,mass_fraction\n";
  for (const auto& d : diags) {
    out += format_double(d.target);
    out += ',';
    out += format_double(d.u0);
    out += ',';
    out += format_double(d.mu);
    out += ',';
    out += format_double(d.sup_dist);
    out += ',';
    out += format_double(d.grad_dist);
    out += ',';
    out += format_double(d.mass_fraction);
    out += '\n';
  }
  return out;
}

std::string continuation_to_csv(const ContinuationResult& result) {
  std::string out = "lambda,u0,r_lambda,ratio\n";
  for (const auto& step : result.steps) {
    out += format_double(step.lambda);
    out += ',';
    out += format_double(step.u0);
    out += ',';
    out += format_double(step.r_lambda);
    out += ',';
    out += format_double(step.ratio);
    out += '\n';
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write file: " + path);
  out << text;
}

}  // namespace gcurv
