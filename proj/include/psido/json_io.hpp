#pragma once

// Deterministic serialization of results (floats rendered with 17
// significant digits as strings, fixed field order) plus the operator-spec
// config schema used by the command-line workbench.

#include <json.hpp>

#include "psido/anomaly.hpp"

namespace psido {

using Json = nlohmann::ordered_json;

std::string fmt17(double v);
Json cd_to_json(cd v);
Json density_to_json(const DensityReport& d);
Json tau_integral_to_json(const TauIntegral& t);
Json anomaly_to_json(const AnomalyReport& r);

// One verification check; `formula` names the identity being tested and is
// emitted in the report's reference column.
struct CheckRow {
    int criterion = 0;
    std::string check_id;
    std::string formula;
    cd value{0};
    cd reference{0};
    double tolerance = 0;
    bool pass = false;
};

Json checks_to_json(const std::vector<CheckRow>& rows, const Json& config_echo);
// Fixed columns: check_id, paper_ref, value, reference, tolerance, pass.
std::string checks_to_csv(const std::vector<CheckRow>& rows);

// Config schema:
//   {"kind":"power_multiplier","base":"1+n^2","exponent":0.5,"cut":3.14159}
//   {"kind":"shifted_first_order","c":0.3,"cut":1.5707963}
//   {"kind":"matrix_multiplier","entries":[["...","..."],["...","..."]]}
//   {"kind":"variable_symbol","entries":[["(2+sin(x))*xi"]],"grid":64}
// Optional everywhere: name, cut, depth.
Operator operator_from_json(const Json& spec);

}  // namespace psido
