#include "defconn/json_io.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "defconn/classify.hpp"
#include "defconn/errors.hpp"
#include "defconn/sectional.hpp"
#include "defconn/topology.hpp"
#include "defconn/version.hpp"

namespace defconn {

using nlohmann::json;

nlohmann::json mat_to_json(const Mat3& m) {
    json rows = json::array();
    for (int i = 0; i < 3; ++i) {
        json row = json::array();
        for (int j = 0; j < 3; ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return rows;
}

Mat3 mat_from_json(const json& j) {
    Mat3 m;
    if (!j.is_array()) fail(ErrorCode::ParseError, "matrix must be an array");
    if (j.size() == 9) {
        for (int i = 0; i < 9; ++i) {
            if (!j[i].is_number()) fail(ErrorCode::ParseError, "matrix entries must be numbers");
            m.m[i] = j[i].get<double>();
        }
        return m;
    }
    if (j.size() != 3) fail(ErrorCode::ParseError, "matrix must be 3x3 (nested) or flat of 9");
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 3)
            fail(ErrorCode::ParseError, "matrix rows must have 3 entries");
        for (int k = 0; k < 3; ++k) {
            if (!j[i][k].is_number())
                fail(ErrorCode::ParseError, "matrix entries must be numbers");
            m(i, k) = j[i][k].get<double>();
        }
    }
    return m;
}

namespace {

double require_number(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number())
        fail(ErrorCode::ParseError, std::string("missing numeric field: ") + key);
    return j[key].get<double>();
}

Profile profile_from_json(const json& j) {
    if (j.contains("builtin") && j["builtin"] == "GromovThurston") {
        const int k = static_cast<int>(require_number(j, "k"));
        const double r0 = require_number(j, "r0");
        double b0 = 0.0, b1 = 0.0;
        if (j.contains("blend")) {
            const auto& b = j["blend"];
            if (!b.is_array() || b.size() != 2)
                fail(ErrorCode::ParseError, "blend must be [b0, b1]");
            b0 = b[0].get<double>();
            b1 = b[1].get<double>();
        }
        return gromov_thurston_profile(k, r0, b0, b1);
    }
    if (j.contains("sinh_scale")) return scaled_sinh_profile(j["sinh_scale"].get<double>());
    fail(ErrorCode::ParseError, "unknown profile spec");
}

}  // namespace

CurvatureOperator operator_from_json(const json& j, bool relaxed_default) {
    if (!j.is_object()) fail(ErrorCode::ParseError, "operator spec must be an object");

    if (j.contains("sectional")) {
        const auto& k = j["sectional"];
        if (!k.is_array() || k.size() != 6)
            fail(ErrorCode::ParseError, "sectional form needs [K01,K02,K03,K23,K31,K12]");
        double v[6];
        for (int i = 0; i < 6; ++i) v[i] = k[i].get<double>();
        return from_sectional_diagonal(v[0], v[1], v[2], v[3], v[4], v[5]);
    }
    if (j.contains("ricci_spectrum")) {
        const auto& rs = j["ricci_spectrum"];
        if (!rs.contains("lambda") || !rs["lambda"].is_array() || rs["lambda"].size() != 4)
            fail(ErrorCode::ParseError, "ricci_spectrum needs lambda of 4 values");
        double lambda[4];
        for (int i = 0; i < 4; ++i) lambda[i] = rs["lambda"][i].get<double>();
        const Mat3 wp = rs.contains("Wplus") ? mat_from_json(rs["Wplus"]) : Mat3::zero();
        const Mat3 wm = rs.contains("Wminus") ? mat_from_json(rs["Wminus"]) : Mat3::zero();
        return from_ricci_spectrum(lambda, wp, wm);
    }
    if (j.contains("builtin")) {
        const double r = require_number(j, "r");
        if (j["builtin"] == "GromovThurston")
            return ramified_cover_operator(profile_from_json(j), r);
        const MetricFamily fam = family_from_json(j);
        return reconstruct_blocks(fam, r);
    }
    if (j.contains("A") && j.contains("B") && j.contains("C")) {
        const bool relaxed = j.value("relaxed", relaxed_default);
        return make_operator(mat_from_json(j["A"]), mat_from_json(j["B"]),
                             mat_from_json(j["C"]), relaxed);
    }
    fail(ErrorCode::ParseError, "unrecognized operator spec");
}

nlohmann::json operator_to_json(const CurvatureOperator& R) {
    json j;
    j["A"] = mat_to_json(R.A);
    j["B"] = mat_to_json(R.B);
    j["C"] = mat_to_json(R.C);
    j["relaxed"] = R.bianchi_relaxed;
    return j;
}

MetricFamily family_from_json(const json& j) {
    if (j.contains("builtin")) {
        const std::string name = j["builtin"].get<std::string>();
        const int n = j.contains("n") ? j["n"].get<int>() : 0;
        return builtin_family(name, n);
    }
    if (j.contains("table")) {
        const auto& t = j["table"];
        for (const char* key : {"r", "f1", "f2", "f3"})
            if (!t.contains(key) || !t[key].is_array())
                fail(ErrorCode::ParseError, std::string("table needs array field ") + key);
        auto vec = [&](const char* key) {
            std::vector<double> v;
            for (const auto& x : t[key]) v.push_back(x.get<double>());
            return v;
        };
        const double h = require_number(j, "fd_step");
        return table_family(vec("r"), vec("f1"), vec("f2"), vec("f3"), h);
    }
    fail(ErrorCode::ParseError, "unrecognized family spec");
}

namespace {

json vec_to_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json classification_to_json(const DefiniteClassification& c) {
    json j;
    j["verdict"] = to_string(c.verdict);
    j["orientation"] = to_string(c.orientation);
    j["sign"] = to_string(c.sign);
    j["d_signature"] = c.d_signature;
    j["margin"] = c.margin;
    j["boundary"] = c.boundary;
    return j;
}

json pinching_to_json(const PinchingReport& p) {
    json j;
    j["min_sec"] = p.min_sec;
    j["max_sec"] = p.max_sec;
    j["sign_uniform"] = p.sign_uniform;
    if (p.ratio)
        j["ratio"] = *p.ratio;
    else
        j["ratio"] = "undefined";
    j["witnesses"] = {{"min", {{"u", vec_to_json(p.u_min)}, {"v", vec_to_json(p.v_min)}}},
                      {"max", {{"u", vec_to_json(p.u_max)}, {"v", vec_to_json(p.v_max)}}}};
    if (p.offsets)
        j["offsets"] = {{"a1", p.offsets->a1},
                        {"a2", p.offsets->a2},
                        {"c1", p.offsets->c1},
                        {"c2", p.offsets->c2}};
    return j;
}

struct Options {
    double tol = kDefaultTol;
    int grid = kDefaultGridN;
    int refine = kDefaultRefineIters;
    std::uint64_t seed = 42;
    bool relaxed = false;
    bool strengthened = true;
    bool blocks = false;
    int samples = 10000;
    double sigma = 0.25;
    double r = 1.0;
    bool has_r = false;
    Bundle bundle = Bundle::LambdaMinus;

    json used;  // parameters echoed into the report
};

Options parse_options(const json& req) {
    Options o;
    if (const char* env = std::getenv("DEFCONN_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end != env && std::isfinite(v) && v > 0.0) o.tol = v;
    }
    if (req.contains("options")) {
        const json& j = req["options"];
        if (j.contains("tol")) o.tol = j["tol"].get<double>();
        if (j.contains("grid")) o.grid = j["grid"].get<int>();
        if (j.contains("refine")) o.refine = j["refine"].get<int>();
        if (j.contains("seed")) o.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("relaxed")) o.relaxed = j["relaxed"].get<bool>();
        if (j.contains("strengthened")) o.strengthened = j["strengthened"].get<bool>();
        if (j.contains("blocks")) o.blocks = j["blocks"].get<bool>();
        if (j.contains("samples")) o.samples = j["samples"].get<int>();
        if (j.contains("sigma")) o.sigma = j["sigma"].get<double>();
        if (j.contains("r")) {
            o.r = j["r"].get<double>();
            o.has_r = true;
        }
        if (j.contains("bundle")) {
            const std::string b = j["bundle"].get<std::string>();
            if (b == "plus")
                o.bundle = Bundle::LambdaPlus;
            else if (b == "minus")
                o.bundle = Bundle::LambdaMinus;
            else
                fail(ErrorCode::ParseError, "bundle must be \"plus\" or \"minus\"");
        }
    }
    o.used["tol"] = o.tol;
    o.used["seed"] = o.seed;
    return o;
}

json input_of(const json& req) {
    if (!req.contains("input") || !req["input"].is_object())
        fail(ErrorCode::ParseError, "request needs an \"input\" object");
    return req["input"];
}

json cmd_classify(const json& req, Options& o) {
    const CurvatureOperator R = operator_from_json(input_of(req), o.relaxed);
    const DefiniteClassification c = classify(R, o.tol);
    const TamingReport t = taming_margin(R, o.grid, o.refine, o.tol);

    json result = classification_to_json(c);
    result["taming"] = {{"margin", t.margin},
                        {"tamed_structure", to_string(t.tamed_structure)},
                        {"argmin_v", vec_to_json(t.argmin_v)}};
    o.used["grid"] = o.grid;
    o.used["refine"] = o.refine;
    return result;
}

json cmd_pinch(const json& req, Options& o) {
    const CurvatureOperator R = operator_from_json(input_of(req), o.relaxed);
    const PinchingReport p = sectional_extrema(R, o.grid, o.refine);
    json result = pinching_to_json(p);
    const DefiniteClassification c = classify(R, o.tol);
    result["classification"] = classification_to_json(c);
    o.used["grid"] = o.grid;
    o.used["refine"] = o.refine;
    return result;
}

json cmd_family(const json& req, Options& o) {
    const json in = input_of(req);

    // Direct paths: {"isotopy_t": t} runs the definite-path check alone.
    if (in.contains("isotopy_t")) {
        const ConnectionPath path = isotopy_path(in["isotopy_t"].get<double>());
        const auto grid = default_r_grid(path, 160);
        const PathVerdict v = definite_path_margin(path, grid);
        json result;
        result["family"] = "isotopy";
        result["t"] = in["isotopy_t"].get<double>();
        result["definite"] = v.definite;
        result["common_sign_of_q"] =
            v.common_sign > 0 ? "+" : (v.common_sign < 0 ? "-" : "none");
        result["margin"] = v.margin;
        result["r_grid"] = {{"min", grid.front()}, {"max", grid.back()}, {"points", grid.size()}};
        o.used["r_points"] = 160;
        return result;
    }

    const MetricFamily fam = family_from_json(in);
    const ConnectionPath path = connection_path(fam, o.bundle);
    const auto grid = default_r_grid(path, 160);
    const PathVerdict v = definite_path_margin(path, grid);

    json result;
    result["family"] = fam.name;
    result["bundle"] = o.bundle == Bundle::LambdaPlus ? "plus" : "minus";
    result["definite"] = v.definite;
    result["common_sign_of_q"] = v.common_sign > 0 ? "+" : (v.common_sign < 0 ? "-" : "none");
    result["margin"] = v.margin;
    result["r_grid"] = {{"min", grid.front()}, {"max", grid.back()}, {"points", grid.size()}};

    // The sign of a definite family is read off the curvature blocks.
    const double r_probe = o.has_r ? o.r : grid[grid.size() / 2];
    if (v.definite) {
        const CurvatureOperator R = reconstruct_blocks(fam, r_probe);
        const CurvatureOperator S =
            o.bundle == Bundle::LambdaPlus ? reverse_orientation(R) : R;
        const DefiniteClassification c = classify(S, o.tol);
        result["sign"] = to_string(c.sign);
    }
    if (o.blocks) {
        const CurvatureOperator R = reconstruct_blocks(fam, r_probe);
        result["blocks"] = operator_to_json(R);
        result["blocks_r"] = r_probe;
        result["classification"] = classification_to_json(classify(R, o.tol));
    }
    o.used["r_points"] = 160;
    return result;
}

json cmd_isotopy(const json& req, Options& o) {
    int t_steps = 21;
    if (req.contains("options") && req["options"].contains("t_steps"))
        t_steps = req["options"]["t_steps"].get<int>();
    if (t_steps < 2) fail(ErrorCode::ParseError, "t_steps must be >= 2");

    json details = json::array();
    bool all = true;
    for (int i = 0; i < t_steps; ++i) {
        const double t = static_cast<double>(i) / (t_steps - 1);
        const ConnectionPath path = isotopy_path(t);
        const auto grid = default_r_grid(path, 50);
        const PathVerdict v = definite_path_margin(path, grid);
        all = all && v.definite;
        details.push_back({{"t", t}, {"definite", v.definite}, {"margin", v.margin}});
    }
    json result;
    result["all_definite"] = all;
    result["t_steps"] = t_steps;
    result["details"] = details;
    o.used["r_points"] = 50;
    return result;
}

json cmd_chern(const json& req, Options&) {
    const json in = input_of(req);
    const std::int64_t chi = static_cast<std::int64_t>(require_number(in, "chi"));
    const std::int64_t tau = static_cast<std::int64_t>(require_number(in, "tau"));

    TwistorInvariants inv;
    if (in.value("complex_orientation", false)) {
        inv = chern_numbers_complex_hyperbolic(chi, tau);
    } else {
        const std::string s = in.value("sign", "Positive");
        if (s != "Positive" && s != "Negative")
            fail(ErrorCode::ParseError, "sign must be Positive or Negative");
        inv = chern_numbers(chi, tau, s == "Positive" ? Sign::Positive : Sign::Negative);
    }

    json result;
    result["c1_cubed"] = inv.c1_cubed;
    result["c1_c2"] = inv.c1_c2;
    result["c3"] = inv.c3;
    result["c2_omega"] = inv.c2_omega;
    result["k_cubed"] = {{"num", inv.k_cubed.num}, {"den", inv.k_cubed.den}};
    result["sign"] = to_string(inv.sign);
    const GateReport gp = hitchin_thorpe_gate(chi, tau, DSign::Dpos);
    const GateReport gn = hitchin_thorpe_gate(chi, tau, DSign::Dneg);
    result["gate_dpos"] = {{"admissible", gp.admissible}, {"reason", gp.reason}};
    result["gate_dneg"] = {{"admissible", gn.admissible}, {"reason", gn.reason}};
    return result;
}

json cmd_adjunction(const json& req, Options&) {
    const json in = input_of(req);
    SurfaceData s;
    s.euler = static_cast<std::int64_t>(require_number(in, "euler"));
    s.self_intersection = static_cast<std::int64_t>(require_number(in, "self_intersection"));
    if (in.contains("double_points"))
        s.double_points = static_cast<std::int64_t>(in["double_points"].get<double>());

    const TwistorDegreeReport rep = twistor_degree(s);
    json result;
    result["degree"] = rep.degree;
    result["adjunction_negative_ok"] = rep.adjunction_negative_ok;
    result["adjunction_positive_ok"] = rep.adjunction_positive_ok;
    return result;
}

json cmd_verify(const json&, Options& o) {
    VerifyOptions vo;
    vo.n_kept = o.samples;
    vo.seed = o.seed;
    vo.strengthened = o.strengthened;
    vo.sigma = o.sigma;
    const VerifyReport vr = run_pinching_verification(vo);

    const std::uint64_t n_suite = std::max<std::uint64_t>(1, o.samples);
    const SuiteReport dom = run_dominance_suite(n_suite, o.seed + 1);
    const SuiteReport ric = run_ricci_positive_suite(n_suite, o.seed + 2);
    const SuiteReport tr = run_trace_identity_suite(std::max<std::uint64_t>(1, n_suite / 10),
                                                    o.seed + 3);

    json result;
    result["pinching"] = {{"drawn", vr.drawn}, {"kept", vr.kept}, {"violations", vr.violations}};
    if (std::isfinite(vr.min_d_margin)) result["pinching"]["min_d_margin"] = vr.min_d_margin;
    if (std::isfinite(vr.min_strengthened_margin))
        result["pinching"]["min_strengthened_margin"] = vr.min_strengthened_margin;
    if (!vr.first_violation.empty()) result["pinching"]["first_violation"] = vr.first_violation;
    result["eigen_sum_dominance"] = {{"samples", dom.samples},
                                     {"counterexamples", dom.counterexamples}};
    if (std::isfinite(dom.worst_margin))
        result["eigen_sum_dominance"]["min_gap"] = dom.worst_margin;
    result["ricci_positive"] = {{"samples", ric.samples},
                                {"counterexamples", ric.counterexamples}};
    if (std::isfinite(ric.worst_margin)) result["ricci_positive"]["min_lambda"] = ric.worst_margin;
    result["trace_identity"] = {{"samples", tr.samples},
                                {"counterexamples", tr.counterexamples},
                                {"max_rel_error", tr.worst_margin}};
    const bool violated = vr.violations || dom.counterexamples || ric.counterexamples ||
                          tr.counterexamples;
    result["violated"] = violated;
    o.used["samples"] = o.samples;
    o.used["sigma"] = o.sigma;
    o.used["strengthened"] = o.strengthened;
    return result;
}

}  // namespace

std::string run_command(const std::string& request_json) {
    json req;
    try {
        req = json::parse(request_json);
    } catch (const json::exception& e) {
        fail(ErrorCode::ParseError, std::string("bad JSON: ") + e.what());
    }
    if (!req.is_object() || !req.contains("verb") || !req["verb"].is_string())
        fail(ErrorCode::ParseError, "request needs a \"verb\"");
    const std::string verb = req["verb"].get<std::string>();

    Options o = parse_options(req);
    json result;
    if (verb == "classify")
        result = cmd_classify(req, o);
    else if (verb == "pinch")
        result = cmd_pinch(req, o);
    else if (verb == "family")
        result = cmd_family(req, o);
    else if (verb == "isotopy")
        result = cmd_isotopy(req, o);
    else if (verb == "chern")
        result = cmd_chern(req, o);
    else if (verb == "adjunction")
        result = cmd_adjunction(req, o);
    else if (verb == "verify")
        result = cmd_verify(req, o);
    else
        fail(ErrorCode::ParseError, "unknown verb: " + verb);

    json resp;
    resp["tool"] = kToolName;
    resp["version"] = kVersion;
    resp["verb"] = verb;
    resp["params"] = o.used;
    resp["result"] = result;
    return resp.dump(2);
}

namespace {

void render(const json& j, const std::string& prefix, std::ostringstream& os) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object() || value.is_array()) {
                os << prefix << key << ":\n";
                render(value, prefix + "  ", os);
            } else {
                os << prefix << key << ": " << value.dump() << "\n";
            }
        }
    } else if (j.is_array()) {
        bool scalar = true;
        for (const auto& v : j)
            if (v.is_object() || v.is_array()) scalar = false;
        if (scalar) {
            os << prefix << j.dump() << "\n";
        } else {
            for (const auto& v : j) render(v, prefix + "  ", os);
        }
    } else {
        os << prefix << j.dump() << "\n";
    }
}

}  // namespace

std::string render_text(const std::string& response_json) {
    const json j = json::parse(response_json);
    std::ostringstream os;
    render(j, "", os);
    return os.str();
}

}  // namespace defconn
