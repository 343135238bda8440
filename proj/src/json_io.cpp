#include "psido/json_io.hpp"

#include <cstdio>
#include <sstream>

namespace psido {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json cd_to_json(cd v) {
    return Json{{"re", fmt17(v.real())}, {"im", fmt17(v.imag())}};
}

Json density_to_json(const DensityReport& d) {
    Json x = Json::array(), re = Json::array(), im = Json::array();
    for (double v : d.x_grid) x.push_back(fmt17(v));
    for (cd v : d.values) {
        re.push_back(fmt17(v.real()));
        im.push_back(fmt17(v.imag()));
    }
    return Json{{"x_grid", x},
                {"values_re", re},
                {"values_im", im},
                {"integral", cd_to_json(d.integral)},
                {"error_estimate", fmt17(d.error_estimate)}};
}

Json tau_integral_to_json(const TauIntegral& t) {
    Json nodes = Json::array(), vals = Json::array();
    for (double v : t.nodes) nodes.push_back(fmt17(v));
    for (cd v : t.integrand) vals.push_back(cd_to_json(v));
    return Json{{"value", cd_to_json(t.value)},
                {"nodes", nodes},
                {"integrand", vals},
                {"doubling_gap", fmt17(t.doubling_gap)}};
}

Json anomaly_to_json(const AnomalyReport& r) {
    Json j{{"psi", fmt17(r.psi)},
           {"commuting", r.commuting},
           {"log_M_local", cd_to_json(r.log_M_local)},
           {"log_M_swapped", cd_to_json(r.log_M_swapped)},
           {"trQL_term", cd_to_json(r.trQL_term)},
           {"residue_term", cd_to_json(r.residue_term)},
           {"tau_integral", tau_integral_to_json(r.tau)}};
    if (r.log_M_spectral) {
        j["log_M_spectral"] = cd_to_json(*r.log_M_spectral);
        j["exp_log_M_local"] = cd_to_json(std::exp(r.log_M_local));
        j["exp_log_M_spectral"] = cd_to_json(std::exp(*r.log_M_spectral));
        j["discrepancy"] = fmt17(r.discrepancy);
    }
    return j;
}

Json checks_to_json(const std::vector<CheckRow>& rows, const Json& config_echo) {
    Json arr = Json::array();
    bool all = true;
    for (const auto& r : rows) {
        arr.push_back(Json{{"criterion", r.criterion},
                           {"check_id", r.check_id},
                           {"paper_ref", r.formula},
                           {"value", cd_to_json(r.value)},
                           {"reference", cd_to_json(r.reference)},
                           {"tolerance", fmt17(r.tolerance)},
                           {"pass", r.pass}});
        all = all && r.pass;
    }
    return Json{{"config", config_echo}, {"all_pass", all}, {"checks", arr}};
}

std::string checks_to_csv(const std::vector<CheckRow>& rows) {
    std::ostringstream out;
    out << "check_id,paper_ref,value,reference,tolerance,pass\n";
    auto num = [](cd v) {
        std::string s = fmt17(v.real());
        if (v.imag() != 0.0) s += (v.imag() > 0 ? "+" : "") + fmt17(v.imag()) + "i";
        return s;
    };
    for (const auto& r : rows)
        out << r.check_id << ',' << r.formula << ',' << num(r.value) << ','
            << num(r.reference) << ',' << fmt17(r.tolerance) << ','
            << (r.pass ? "true" : "false") << '\n';
    return out.str();
}

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
    throw std::runtime_error("config error at " + path + ": " + why);
}

double get_cut(const Json& spec, double fallback) {
    if (!spec.contains("cut")) return fallback;
    if (!spec["cut"].is_number()) bad_field("cut", "expected a number (radians)");
    return spec["cut"].get<double>();
}

int get_depth(const Json& spec) {
    if (!spec.contains("depth")) return kDefaultDepth;
    if (!spec["depth"].is_number_integer()) bad_field("depth", "expected an integer");
    return spec["depth"].get<int>();
}

std::vector<std::vector<std::string>> get_entries(const Json& spec) {
    if (!spec.contains("entries") || !spec["entries"].is_array())
        bad_field("entries", "expected an array of rows");
    std::vector<std::vector<std::string>> out;
    int i = 0;
    for (const auto& row : spec["entries"]) {
        if (!row.is_array()) bad_field("entries[" + std::to_string(i) + "]", "expected an array");
        out.emplace_back();
        int j = 0;
        for (const auto& e : row) {
            if (!e.is_string())
                bad_field("entries[" + std::to_string(i) + "][" + std::to_string(j) + "]",
                          "expected an expression string");
            out.back().push_back(e.get<std::string>());
            ++j;
        }
        ++i;
    }
    return out;
}

}  // namespace

Operator operator_from_json(const Json& spec) {
    if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string())
        bad_field("kind", "missing operator kind");
    std::string kind = spec["kind"].get<std::string>();
    std::string name = spec.value("name", kind);
    int depth = get_depth(spec);

    if (kind == "power_multiplier") {
        if (!spec.contains("base") || !spec["base"].is_string())
            bad_field("base", "expected an expression string in n");
        if (!spec.contains("exponent") || !spec["exponent"].is_number())
            bad_field("exponent", "expected a number");
        return make_power_multiplier(name, spec["base"].get<std::string>(),
                                     cd(spec["exponent"].get<double>()),
                                     get_cut(spec, PI), depth);
    }
    if (kind == "shifted_first_order") {
        if (!spec.contains("c") || !spec["c"].is_number())
            bad_field("c", "expected a number");
        return make_shifted_first_order(name, cd(spec["c"].get<double>()),
                                        get_cut(spec, PI / 2), depth);
    }
    if (kind == "matrix_multiplier")
        return make_matrix_multiplier(name, get_entries(spec), get_cut(spec, PI), depth);
    if (kind == "variable_symbol") {
        int grid = spec.value("grid", kDefaultGrid);
        return make_variable_symbol(name, get_entries(spec), get_cut(spec, PI), grid, depth);
    }
    bad_field("kind", "unknown operator kind '" + kind + "'");
}

}  // namespace psido
