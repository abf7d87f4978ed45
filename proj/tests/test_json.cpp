#include "doctest.h"

#include <string>

#include "defconn/errors.hpp"
#include "defconn/json_io.hpp"

using namespace defconn;
using nlohmann::json;

TEST_CASE("operator JSON forms") {
    SUBCASE("block form, nested and flat") {
        const json nested = json::parse(R"({
            "A": [[1,0,0],[0,1,0],[0,0,1]],
            "B": [[0,0,0],[0,0,0],[0,0,0]],
            "C": [[1,0,0],[0,1,0],[0,0,1]],
            "relaxed": false})");
        const CurvatureOperator R = operator_from_json(nested);
        CHECK(max_abs(R.A - Mat3::identity()) == 0.0);

        const json flat = json::parse(R"({
            "A": [1,0,0,0,1,0,0,0,1],
            "B": [0,0,0,0,0,0,0,0,0],
            "C": [1,0,0,0,1,0,0,0,1]})");
        CHECK(max_abs(operator_from_json(flat).A - Mat3::identity()) == 0.0);
    }
    SUBCASE("sectional form") {
        const json j = json::parse(R"({"sectional": [-1,-1,-1,-1,-1,-1]})");
        const CurvatureOperator R = operator_from_json(j);
        CHECK(max_abs(R.A + Mat3::identity()) == 0.0);
    }
    SUBCASE("ricci spectrum form") {
        const json j = json::parse(R"({"ricci_spectrum": {"lambda": [1,1,1,1]}})");
        const CurvatureOperator R = operator_from_json(j);
        CHECK(scalar_curvature(R) == doctest::Approx(4.0));
    }
    SUBCASE("family-backed form") {
        const json j = json::parse(R"({"builtin": "H4", "r": 1.0})");
        const CurvatureOperator R = operator_from_json(j);
        CHECK(max_abs(R.A + Mat3::identity()) < 1e-12);
    }
    SUBCASE("round trip") {
        const json j = json::parse(R"({"sectional": [-1,-2,-0.5,-1.5,-1,-3]})");
        const CurvatureOperator R = operator_from_json(j);
        const CurvatureOperator S = operator_from_json(operator_to_json(R));
        CHECK(max_abs(R.A - S.A) == 0.0);
        CHECK(max_abs(R.B - S.B) == 0.0);
        CHECK(max_abs(R.C - S.C) == 0.0);
    }
    SUBCASE("parse failures carry the parse error code") {
        for (const char* bad :
             {R"({"A": [[1,2],[3,4]]})", R"({"sectional": [1,2,3]})", R"({})"}) {
            try {
                operator_from_json(json::parse(bad));
                CHECK(false);
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::ParseError);
            }
        }
    }
}

TEST_CASE("command driver") {
    SUBCASE("classify a built-in family") {
        const std::string resp = run_command(
            R"({"verb": "classify", "input": {"builtin": "H4", "r": 1.0}})");
        const json j = json::parse(resp);
        CHECK(j["tool"] == "defconn");
        CHECK(j["result"]["verdict"] == "Definite");
        CHECK(j["result"]["sign"] == "Negative");
        CHECK(j["result"]["orientation"] == "Same");
        CHECK(j["result"]["taming"]["tamed_structure"] == "Jminus");
        CHECK(j["params"].contains("tol"));
        CHECK(j.contains("version"));
    }
    SUBCASE("pinch the extremal boundary tensor") {
        const std::string resp = run_command(R"({
            "verb": "pinch",
            "input": {"A": [[1.5,0,0],[0,1,0],[0,0,0]],
                       "B": [0,0,0,0,0,0,0,0,0],
                       "C": [[1,0,0],[0,1,0],[0,0,1]],
                       "relaxed": true}})");
        const json j = json::parse(resp);
        CHECK(j["result"]["ratio"].get<double>() == doctest::Approx(0.4).epsilon(1e-9));
        CHECK(j["result"]["classification"]["boundary"] == true);
    }
    SUBCASE("family verdicts") {
        const json no = json::parse(run_command(
            R"({"verb": "family", "input": {"builtin": "On", "n": 2},
                 "options": {"bundle": "minus"}})"));
        CHECK(no["result"]["definite"] == false);

        const json yes = json::parse(run_command(
            R"({"verb": "family", "input": {"builtin": "On", "n": 4},
                 "options": {"bundle": "minus", "blocks": true, "r": 1.0}})"));
        CHECK(yes["result"]["definite"] == true);
        CHECK(yes["result"]["sign"] == "Negative");
        CHECK(yes["result"].contains("blocks"));
    }
    SUBCASE("family verb accepts tabulated input and the direct isotopy form") {
        nlohmann::json req;
        req["verb"] = "family";
        nlohmann::json table;
        std::vector<double> r, f;
        for (double x = 0.4; x <= 3.0 + 1e-9; x += 0.01) {
            r.push_back(x);
            f.push_back(std::sinh(x));
        }
        table["r"] = r;
        table["f1"] = f;
        table["f2"] = f;
        table["f3"] = f;
        req["input"] = {{"table", table}, {"fd_step", 0.01}};
        req["options"] = {{"bundle", "plus"}};
        const json j = json::parse(run_command(req.dump()));
        CHECK(j["result"]["definite"] == true);
        CHECK(j["result"]["common_sign_of_q"] == "-");

        const json iso = json::parse(run_command(
            R"({"verb": "family", "input": {"isotopy_t": 0.5}})"));
        CHECK(iso["result"]["definite"] == true);
        CHECK(iso["result"]["family"] == "isotopy");
    }
    SUBCASE("isotopy sweep") {
        const json j = json::parse(run_command(
            R"({"verb": "isotopy", "input": {}, "options": {"t_steps": 5}})"));
        CHECK(j["result"]["all_definite"] == true);
        CHECK(j["result"]["details"].size() == 5);
    }
    SUBCASE("chern and adjunction") {
        const json c = json::parse(run_command(
            R"({"verb": "chern", "input": {"chi": 2, "tau": 0, "sign": "Positive"}})"));
        CHECK(c["result"]["c1_cubed"] == 64);
        CHECK(c["result"]["gate_dpos"]["admissible"] == true);

        const json a = json::parse(run_command(
            R"({"verb": "adjunction",
                 "input": {"euler": 2, "self_intersection": -3, "double_points": 0}})"));
        CHECK(a["result"]["degree"] == -1);
        CHECK(a["result"]["adjunction_negative_ok"] == true);
    }
    SUBCASE("identical requests give byte-identical reports") {
        const std::string req =
            R"({"verb": "verify", "input": {},
                 "options": {"samples": 50, "seed": 7}})";
        CHECK(run_command(req) == run_command(req));
    }
    SUBCASE("bad requests raise parse errors") {
        for (const char* bad :
             {"not json", R"({"verb": "nope", "input": {}})", R"({"input": {}})"}) {
            try {
                run_command(bad);
                CHECK(false);
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::ParseError);
            }
        }
    }
    SUBCASE("text rendering carries the same fields") {
        const std::string resp = run_command(
            R"({"verb": "chern", "input": {"chi": 2, "tau": 0, "sign": "Positive"}})");
        const std::string text = render_text(resp);
        CHECK(text.find("c1_cubed: 64") != std::string::npos);
        CHECK(text.find("version") != std::string::npos);
    }
}
