#ifndef GCURV_IO_HPP
#define GCURV_IO_HPP

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gcurv/blowup.hpp"
#include "gcurv/continuation.hpp"
#include "gcurv/diagnostics.hpp"
#include "gcurv/model.hpp"
#include "gcurv/profile.hpp"
#include "gcurv/quadrature.hpp"
#include "gcurv/shooting.hpp"

namespace gcurv {

inline constexpr const char* kProfileSchema = "gcurv-profile/1";
inline constexpr const char* kResultSchema = "gcurv-result/1";

/// Shortest decimal representation that parses back to the same bits.
std::string format_double(double v);
double parse_double(std::string_view s);

// JSON bindings (nlohmann ADL). NaN serializes as null and parses back to NaN.
void to_json(nlohmann::json& j, const CurvatureSpec& spec);
void from_json(const nlohmann::json& j, CurvatureSpec& spec);
void to_json(nlohmann::json& j, const IntegratorControls& controls);
void from_json(const nlohmann::json& j, IntegratorControls& controls);
void to_json(nlohmann::json& j, const Window& window);
void to_json(nlohmann::json& j, const FarFieldFit& fit);
void to_json(nlohmann::json& j, const IntegralReport& report);
void to_json(nlohmann::json& j, const DiagnosticsReport& report);
void to_json(nlohmann::json& j, const ShootingResult& result);
void to_json(nlohmann::json& j, const BlowupDiagnostics& diag);
void to_json(nlohmann::json& j, const ContinuationStep& step);
void to_json(nlohmann::json& j, const ContinuationResult& result);

/// Self-describing profile document (spec, controls, status, node arrays).
nlohmann::json profile_to_json(const RadialProfile& profile);
RadialProfile profile_from_json(const nlohmann::json& j);

/// CSV with header r,u,w,lam,vol,pw; values round-trip bit-exactly.
std::string profile_to_csv(const RadialProfile& profile);

/// Bare node table parsed back from the CSV (the CSV is not self-describing).
struct ProfileTable {
  std::vector<double> r, u, w, lam, vol, pw;
};
ProfileTable profile_table_from_csv(std::string_view csv);

std::string sweep_to_csv(std::span<const ShootingResult> results);
std::string blowup_to_csv(std::span<const BlowupDiagnostics> diags);
std::string continuation_to_csv(const ContinuationResult& result);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace gcurv

#endif
