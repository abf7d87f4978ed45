// Command-line front end: parses arguments, builds a JSON request, and runs
// it through the shared-library C interface. Reports are deterministic:
// identical inputs and seeds produce byte-identical JSON.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "defconn.h"
#include "json.hpp"

using nlohmann::json;

namespace {

int exit_code_for(defconn_status st) {
    switch (st) {
        case DEFCONN_OK: return 0;
        case DEFCONN_ERR_THEOREM_VIOLATION: return 3;
        case DEFCONN_ERR_INTERNAL: return 1;
        default: return 2;
    }
}

struct CommonOpts {
    double tol = -1.0;
    int grid = -1;
    int refine = -1;
    std::uint64_t seed = 42;
    bool seed_set = false;
    bool text = false;
    bool relaxed = false;
    std::string file;
    std::string inline_json;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_input) {
    cmd->add_option("--tol", c.tol, "definiteness tolerance (default 1e-9, env DEFCONN_TOL)");
    cmd->add_option("--grid", c.grid, "sphere grid resolution per axis (default 64)");
    cmd->add_option("--refine", c.refine, "local refinement iterations (default 50)");
    cmd->add_option("--seed", c.seed, "random seed")->each([&c](const std::string&) {
        c.seed_set = true;
    });
    cmd->add_flag("--text", c.text, "render the report as text instead of JSON");
    cmd->add_flag("--json", [](std::int64_t) {}, "emit JSON (default)");
    if (with_input) {
        cmd->add_flag("--relaxed", c.relaxed, "admit operators violating the trace constraint");
        cmd->add_option("--file", c.file, "read the input object from a JSON file");
        cmd->add_option("--inline", c.inline_json, "input object as an inline JSON string");
    }
}

json options_json(const CommonOpts& c) {
    json o = json::object();
    if (c.tol > 0.0) o["tol"] = c.tol;
    if (c.grid > 0) o["grid"] = c.grid;
    if (c.refine > 0) o["refine"] = c.refine;
    if (c.seed_set) o["seed"] = c.seed;
    if (c.relaxed) o["relaxed"] = true;
    return o;
}

json load_input(const CommonOpts& c) {
    if (!c.file.empty()) {
        std::ifstream in(c.file);
        if (!in) {
            std::cerr << "error: cannot open " << c.file << "\n";
            std::exit(2);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        json j = json::parse(ss.str(), nullptr, false);
        if (j.is_discarded()) {
            std::cerr << "error: " << c.file << " is not valid JSON\n";
            std::exit(2);
        }
        return j;
    }
    if (!c.inline_json.empty()) {
        json j = json::parse(c.inline_json, nullptr, false);
        if (j.is_discarded()) {
            std::cerr << "error: --inline is not valid JSON\n";
            std::exit(2);
        }
        return j;
    }
    return json::object();
}

int run_request(const json& request, bool text) {
    char* response = nullptr;
    const defconn_status st = defconn_run_json(request.dump().c_str(), &response);
    if (st != DEFCONN_OK) {
        std::cerr << "error: " << defconn_last_error() << "\n";
        return exit_code_for(st);
    }

    int code = 0;
    json resp = json::parse(response, nullptr, false);
    if (!resp.is_discarded() && resp.contains("result") && resp["result"].is_object() &&
        resp["result"].value("violated", false))
        code = 3;

    if (text) {
        char* rendered = nullptr;
        if (defconn_render_text(response, &rendered) == DEFCONN_OK) {
            std::fputs(rendered, stdout);
            defconn_string_free(rendered);
        }
    } else {
        std::puts(response);
    }
    defconn_string_free(response);
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical toolkit for definite connections of Riemannian four-manifolds"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);

    // classify -------------------------------------------------------------
    CommonOpts c_cl;
    std::string cl_builtin;
    int cl_n = 0, cl_k = 0;
    double cl_r = 0.0, cl_r0 = 0.0;
    std::vector<double> cl_blend;
    bool cl_has_r = false;
    auto* classify = app.add_subcommand("classify", "definiteness and taming of an operator");
    add_common(classify, c_cl, true);
    classify->add_option("--builtin", cl_builtin, "operator from a built-in family at radius --r");
    classify->add_option("--n", cl_n, "parameter n of the On family");
    classify->add_option("--k", cl_k, "cover degree of the GromovThurston profile");
    classify->add_option("--r0", cl_r0, "hyperbolic-matching radius of the profile");
    classify->add_option("--blend", cl_blend, "blend window [b0 b1] of the profile")
        ->expected(2);
    classify->add_option("--r", cl_r, "evaluation radius")->each([&](const std::string&) {
        cl_has_r = true;
    });

    // pinch ----------------------------------------------------------------
    CommonOpts c_pi;
    auto* pinch = app.add_subcommand("pinch", "sectional-curvature extrema and pinching ratio");
    add_common(pinch, c_pi, true);

    // family ---------------------------------------------------------------
    CommonOpts c_fa;
    std::string fa_builtin = "H4", fa_bundle = "minus";
    int fa_n = 0;
    double fa_r = 0.0;
    bool fa_has_r = false, fa_blocks = false;
    auto* family = app.add_subcommand("family", "connection path of a cohomogeneity-one family");
    add_common(family, c_fa, true);
    family->add_option("--builtin", fa_builtin, "family name: S4, H4, CP2, CH2, On");
    family->add_option("--n", fa_n, "parameter n of the On family");
    family->add_option("--bundle", fa_bundle, "plus or minus")
        ->check(CLI::IsMember({"plus", "minus"}));
    family->add_flag("--blocks", fa_blocks, "include reconstructed curvature blocks");
    family->add_option("--r", fa_r, "radius for block reconstruction")
        ->each([&](const std::string&) { fa_has_r = true; });

    // isotopy ----------------------------------------------------------------
    CommonOpts c_is;
    int is_steps = 21;
    auto* isotopy = app.add_subcommand("isotopy", "definiteness along the linear isotopy");
    add_common(isotopy, c_is, false);
    isotopy->add_option("--t-steps", is_steps, "number of t samples in [0,1] (default 21)");

    // chern ------------------------------------------------------------------
    CommonOpts c_ch;
    std::int64_t ch_chi = 0, ch_tau = 0;
    std::string ch_sign = "Positive";
    bool ch_complex = false;
    auto* chern = app.add_subcommand("chern", "Chern numbers of the sphere bundle");
    add_common(chern, c_ch, false);
    chern->add_option("--chi", ch_chi, "Euler characteristic")->required();
    chern->add_option("--tau", ch_tau, "signature")->required();
    chern->add_option("--sign", ch_sign, "Positive or Negative")
        ->check(CLI::IsMember({"Positive", "Negative"}));
    chern->add_flag("--complex-orientation", ch_complex,
                    "interpret (chi, tau) in the complex orientation (negative branch)");

    // adjunction ---------------------------------------------------------------
    CommonOpts c_ad;
    std::int64_t ad_euler = 0, ad_self = 0, ad_dpts = 0;
    auto* adj = app.add_subcommand("adjunction", "twistor degree of an immersed surface");
    add_common(adj, c_ad, false);
    adj->add_option("--euler", ad_euler, "Euler characteristic of the surface")->required();
    adj->add_option("--self-intersection", ad_self, "self-intersection number")->required();
    adj->add_option("--double-points", ad_dpts, "number of double points (default 0)");

    // verify ---------------------------------------------------------------
    CommonOpts c_ve;
    int ve_samples = 10000;
    double ve_sigma = -1.0;
    bool ve_basic = false;
    auto* verify = app.add_subcommand("verify", "randomized pinching / lemma verification");
    add_common(verify, c_ve, false);
    verify->add_option("--samples", ve_samples, "qualifying samples per suite (default 10000)");
    verify->add_option("--sigma", ve_sigma, "sampler dispersion (default 0.25)");
    verify->add_flag("--basic", ve_basic, "skip the strengthened taming inequalities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the usage message
        return 2;
    }

    json request;
    json input = json::object();
    CommonOpts* common = nullptr;

    if (classify->parsed()) {
        common = &c_cl;
        request["verb"] = "classify";
        input = load_input(c_cl);
        if (!cl_builtin.empty()) {
            input["builtin"] = cl_builtin;
            if (cl_n > 0) input["n"] = cl_n;
            if (cl_k > 0) input["k"] = cl_k;
            if (cl_r0 > 0.0) input["r0"] = cl_r0;
            if (cl_blend.size() == 2) input["blend"] = cl_blend;
            input["r"] = cl_has_r ? cl_r : 1.0;
        }
    } else if (pinch->parsed()) {
        common = &c_pi;
        request["verb"] = "pinch";
        input = load_input(c_pi);
    } else if (family->parsed()) {
        common = &c_fa;
        request["verb"] = "family";
        input = load_input(c_fa);
        if (!input.contains("table") && !input.contains("builtin")) {
            input["builtin"] = fa_builtin;
            if (fa_n > 0) input["n"] = fa_n;
        }
    } else if (isotopy->parsed()) {
        common = &c_is;
        request["verb"] = "isotopy";
    } else if (chern->parsed()) {
        common = &c_ch;
        request["verb"] = "chern";
        input["chi"] = ch_chi;
        input["tau"] = ch_tau;
        if (ch_complex)
            input["complex_orientation"] = true;
        else
            input["sign"] = ch_sign;
    } else if (adj->parsed()) {
        common = &c_ad;
        request["verb"] = "adjunction";
        input["euler"] = ad_euler;
        input["self_intersection"] = ad_self;
        input["double_points"] = ad_dpts;
    } else if (verify->parsed()) {
        common = &c_ve;
        request["verb"] = "verify";
    }

    json opts = options_json(*common);
    if (family->parsed()) {
        opts["bundle"] = fa_bundle;
        if (fa_blocks) opts["blocks"] = true;
        if (fa_has_r) opts["r"] = fa_r;
    }
    if (isotopy->parsed()) opts["t_steps"] = is_steps;
    if (verify->parsed()) {
        opts["samples"] = ve_samples;
        if (ve_sigma > 0.0) opts["sigma"] = ve_sigma;
        if (ve_basic) opts["strengthened"] = false;
    }

    request["input"] = input;
    if (!opts.empty()) request["options"] = opts;
    return run_request(request, common->text);
}
