#pragma once

#include <string>

#include "defconn/cohom.hpp"
#include "defconn/curvature.hpp"

#include "json.hpp"

// JSON interchange. Operators accept three constructor forms:
//   {"A": [[...]], "B": [[...]], "C": [[...]], "relaxed": bool}
//   {"sectional": [K01, K02, K03, K23, K31, K12]}
//   {"ricci_spectrum": {"lambda": [...4...], "Wplus": [[...]], "Wminus": [[...]]}}
// plus the family-backed form {"builtin": ..., "r": ...}.
// Families: {"builtin": "H4"} | {"builtin": "On", "n": 3}
//           | {"table": {"r": [...], "f1": [...], "f2": [...], "f3": [...]}, "fd_step": h}
// and the direct path {"isotopy_t": t}. Matrices are row-major 3x3, either
// nested rows or a flat array of 9.

namespace defconn {

nlohmann::json mat_to_json(const Mat3& m);
Mat3 mat_from_json(const nlohmann::json& j);

CurvatureOperator operator_from_json(const nlohmann::json& j, bool relaxed_default = false);
nlohmann::json operator_to_json(const CurvatureOperator& R);

MetricFamily family_from_json(const nlohmann::json& j);

// Executes one toolkit command. Request shape:
//   {"verb": "classify" | "pinch" | "family" | "isotopy" | "chern"
//            | "adjunction" | "verify",
//    "input": {...}, "options": {...}}
// The response embeds the tool version and every tolerance / grid parameter
// used, so identical requests produce byte-identical reports.
std::string run_command(const std::string& request_json);

// Renders a response object as indented key/value text (same content).
std::string render_text(const std::string& response_json);

}  // namespace defconn
