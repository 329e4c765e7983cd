#include <doctest.h>

#include <cstdio>
#include <string>
#include <vector>

#include "gcurv/cli.hpp"
#include "gcurv/io.hpp"
#include "schema_check.hpp"

using namespace gcurv;
using nlohmann::json;

namespace {

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv = {"gcurv"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_") + name;  // test working directory
}

json load(const std::string& path) { return json::parse(read_text_file(path)); }

const json& result_schema() {
  static json schema =
      json::parse(read_text_file(std::string(GCURV_SOURCE_DIR) + "/docs/result-schema.json"));
  return schema;
}

}  // namespace

TEST_CASE("solve subcommand emits a full diagnostic document") {
  std::string out = tmp_path("solve.json");
  int code = run({"solve", "--p", "1", "--lambda-over-pi", "3.5", "--out", out});
  REQUIRE(code == 0);
  json doc = load(out);
  CHECK_NOTHROW(testing::check_result_document(doc, result_schema()));
  CHECK(doc["command"] == "solve");
  double lam_pi = doc["result"]["shooting"]["lambda_hat_over_pi"].get<double>();
  CHECK(lam_pi == doctest::Approx(3.5).epsilon(1e-6));
  CHECK(std::abs(doc["result"]["diagnostics"]["pohozaev_residual"].get<double>()) < 1e-3);
}

TEST_CASE("solve outside the window is a configuration error") {
  CHECK(run({"solve", "--p", "2.5", "--lambda-over-pi", "4.6"}) == 2);
  CHECK(run({"solve", "--p", "1", "--lambda-over-pi", "4.6"}) == 2);
  CHECK(run({"solve", "--p", "1", "--lambda-over-pi", "2.9"}) == 2);
}

TEST_CASE("oracle subcommand passes on defaults") {
  std::string out = tmp_path("oracle.json");
  REQUIRE(run({"oracle", "--out", out}) == 0);
  json doc = load(out);
  CHECK_NOTHROW(testing::check_result_document(doc, result_schema()));
  CHECK(doc["result"]["ok"] == true);
}

TEST_CASE("shoot emits profiles that pohozaev and kelvin can consume") {
  std::string out = tmp_path("shoot.json");
  std::string profile = tmp_path("profile.json");
  std::string csv = tmp_path("profile.csv");
  REQUIRE(run({"shoot", "--u0", "3.0", "--p", "1", "--kind", "sign", "--out", out,
               "--profile-json", profile, "--profile-out", csv}) == 0);
  json doc = load(out);
  CHECK_NOTHROW(testing::check_result_document(doc, result_schema()));
  CHECK(doc["result"]["shooting"]["status"] == "converged");

  // the CSV companion parses and matches the JSON nodes in length
  ProfileTable table = profile_table_from_csv(read_text_file(csv));
  RadialProfile stored = profile_from_json(load(profile));
  CHECK(table.r.size() == stored.size());

  std::string poh = tmp_path("pohozaev.json");
  REQUIRE(run({"pohozaev", "--profile", profile, "--out", poh}) == 0);
  json poh_doc = load(poh);
  CHECK_NOTHROW(testing::check_result_document(poh_doc, result_schema()));
  CHECK(std::abs(poh_doc["result"]["diagnostics"]["pohozaev_residual"].get<double>()) < 1e-3);

  std::string kel = tmp_path("kelvin.json");
  REQUIRE(run({"kelvin", "--profile", profile, "--out", kel}) == 0);
  json kel_doc = load(kel);
  CHECK_NOTHROW(testing::check_result_document(kel_doc, result_schema()));
  CHECK(kel_doc["result"]["points"].size() == 4);
}

TEST_CASE("pohozaev refuses a non-converged stored profile") {
  std::string out = tmp_path("diverged_profile.json");
  REQUIRE(run({"shoot", "--u0", "-5.0", "--p", "1", "--profile-json", out, "--out",
               tmp_path("diverged_shot.json")}) == 0);
  CHECK(run({"pohozaev", "--profile", out}) == 1);
}

TEST_CASE("sweep emits ordered results and a CSV table") {
  std::string out = tmp_path("sweep.json");
  std::string csv = tmp_path("sweep.csv");
  REQUIRE(run({"sweep", "--p", "1", "--u0-min", "3", "--u0-max", "5", "--u0-count", "5",
               "--out", out, "--csv-out", csv}) == 0);
  json doc = load(out);
  CHECK_NOTHROW(testing::check_result_document(doc, result_schema()));
  auto results = doc["result"]["results"];
  REQUIRE(results.size() == 5);
  CHECK(results[0]["u0"] == 3.0);
  CHECK(results[4]["u0"] == 5.0);
  std::string table = read_text_file(csv);
  CHECK(table.rfind("u0,lambda_hat,lambda_hat_over_pi,status\n", 0) == 0);
}

TEST_CASE("blowup subcommand reports monotone concentration") {
  std::string out = tmp_path("blowup.json");
  std::string csv = tmp_path("blowup.csv");
  REQUIRE(run({"blowup", "--p", "1", "--targets-over-pi", "3.5", "3.9", "--out", out,
               "--csv-out", csv}) == 0);
  json doc = load(out);
  CHECK_NOTHROW(testing::check_result_document(doc, result_schema()));
  auto results = doc["result"]["results"];
  REQUIRE(results.size() == 2);
  CHECK(results[1]["mu"].get<double>() < results[0]["mu"].get<double>());
  std::string table = read_text_file(csv);
  CHECK(table.rfind("target,u0,mu,sup_dist,grad_dist,mass_fraction\n", 0) == 0);
}

TEST_CASE("continue subcommand runs a short schedule") {
  std::string out = tmp_path("continue.json");
  std::string csv = tmp_path("continue.csv");
  REQUIRE(run({"continue", "--p", "1", "--lambda-over-pi", "3.5", "--schedule", "0.3", "0.1",
               "0.03", "--out", out, "--csv-out", csv}) == 0);
  json doc = load(out);
  CHECK_NOTHROW(testing::check_result_document(doc, result_schema()));
  CHECK(doc["result"]["mu_hat"].get<double>() > 0.0);
  CHECK(doc["result"]["match_error"].get<double>() < 0.15);
  std::string table = read_text_file(csv);
  CHECK(table.rfind("lambda,u0,r_lambda,ratio\n", 0) == 0);
}

TEST_CASE("identical invocations produce identical bytes") {
  std::string a = tmp_path("det_a.json"), b = tmp_path("det_b.json");
  REQUIRE(run({"solve", "--p", "1", "--lambda-over-pi", "3.9", "--out", a}) == 0);
  REQUIRE(run({"solve", "--p", "1", "--lambda-over-pi", "3.9", "--out", b}) == 0);
  CHECK(read_text_file(a) == read_text_file(b));
}

TEST_CASE("bad flags are configuration errors") {
  CHECK(run({"solve", "--p", "1"}) == 2);                    // missing required target
  CHECK(run({"frobnicate"}) == 2);                           // unknown subcommand
  CHECK(run({"shoot", "--u0", "1", "--kind", "weird"}) == 2);
  CHECK(run({"sweep", "--p", "1", "--u0-count", "0"}) == 2);
}
