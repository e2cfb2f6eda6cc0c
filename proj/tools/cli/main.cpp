#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "commands.hpp"
#include "fracperim/alpha.hpp"
#include "fracperim/error.hpp"
#include "fracperim/io.hpp"

using nlohmann::json;
namespace cli = fracperim::cli;

namespace {

struct SetArgs {
    std::string name;
    std::string file;
    std::vector<std::string> params;
};

struct CommonArgs {
    std::string out;
    std::uint64_t seed = 20240611;
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
};

void add_set_options(CLI::App* app, SetArgs& a) {
    auto* name = app->add_option("--set", a.name, "canonical set name");
    auto* file = app->add_option("--set-file", a.file, "set-spec JSON file");
    name->excludes(file);
    app->add_option("--param", a.params, "canonical parameter key=value (repeatable)");
}

void add_common_options(CLI::App* app, CommonArgs& a, bool quadrature) {
    app->add_option("--out", a.out, "output path (stdout when omitted); a .json sidecar is written next to it");
    app->add_option("--seed", a.seed, "seed recorded in every artifact")->capture_default_str();
    if (quadrature) {
        app->add_option("--rel-tol", a.rel_tol, "quadrature relative tolerance")->capture_default_str();
        app->add_option("--abs-tol", a.abs_tol, "quadrature absolute tolerance")->capture_default_str();
    }
}

json set_json(const SetArgs& a) {
    if (!a.file.empty()) return fracperim::read_json(a.file);
    fracperim::require(!a.name.empty(), fracperim::ErrorCode::invalid_argument, "--set or --set-file is required");
    json params = json::object();
    for (const auto& kv : a.params) {
        const auto eq = kv.find('=');
        fracperim::require(eq != std::string::npos, fracperim::ErrorCode::invalid_argument, "--param expects key=value");
        params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    }
    return {{"type", "canonical"}, {"name", a.name}, {"params", params}};
}

json common_json(const CommonArgs& a, bool quadrature) {
    json j{{"out", a.out}, {"seed", a.seed}};
    if (quadrature) {
        j["rel_tol"] = a.rel_tol;
        j["abs_tol"] = a.abs_tol;
    }
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fractional curvature, contribution from infinity and discrete fractional perimeter minimization"};
    app.require_subcommand(0, 1);
    std::string config_file;
    app.add_option("--config", config_file, "re-run from an artifact sidecar or a config JSON {command, config}");

    std::map<std::string, json> resolved;
    std::map<std::string, CommonArgs> common;
    std::map<std::string, SetArgs> sets;

    // alpha
    auto* alpha = app.add_subcommand("alpha", "contribution from infinity: s-scan and extrapolated limit");
    std::vector<double> alpha_q, alpha_grid = fracperim::default_alpha_grid();
    double alpha_r = 1.0;
    bool closed_forms = true;
    add_set_options(alpha, sets["alpha"]);
    add_common_options(alpha, common["alpha"], true);
    alpha->add_option("--q", alpha_q, "center point (default origin)")->delimiter(',');
    alpha->add_option("--r", alpha_r, "radius of the excluded ball")->capture_default_str();
    alpha->add_option("--s-grid", alpha_grid, "decreasing s values")->delimiter(',');
    alpha->add_option("--closed-forms", closed_forms, "use exact values where a family applies")->capture_default_str();
    std::string emit = "csv";
    alpha->add_option("--emit", emit, "output format")->check(CLI::IsMember({"csv"}));

    // curv
    auto* curv = app.add_subcommand("curv", "fractional mean curvature at a boundary point");
    std::vector<double> curv_p, curv_s{0.5}, tangent_ball;
    std::string method = "auto";
    double alpha_bar = 0.0, sigma = 0.5;
    add_set_options(curv, sets["curv"]);
    add_common_options(curv, common["curv"], true);
    curv->add_option("--p", curv_p, "boundary point")->delimiter(',');
    curv->add_option("--s", curv_s, "s values")->delimiter(',');
    curv->add_option("--method", method, "auto (graph formula when a chart exists) or pv")->check(CLI::IsMember({"auto", "pv"}));
    auto* tb = curv->add_option("--tangent-ball", tangent_ball, "exterior tangent ball center,...,radius: run the positive-curvature check")
                   ->delimiter(',');
    curv->add_option("--alpha-bar", alpha_bar, "upper contribution from infinity of the exterior data")->needs(tb);
    curv->add_option("--sigma", sigma, "threshold s for the tangent-ball radius")->needs(tb);

    // scan
    auto* scan = app.add_subcommand("scan", "curvature over an s-grid with predicted and extrapolated limits");
    std::vector<double> scan_p, scan_grid{0.2, 0.1, 0.05, 0.025, 0.0125};
    std::string mode = "times_s";
    double H = 0.0;
    add_set_options(scan, sets["scan"]);
    add_common_options(scan, common["scan"], true);
    scan->add_option("--p", scan_p, "boundary point")->delimiter(',');
    scan->add_option("--s-grid", scan_grid, "s values")->delimiter(',');
    scan->add_option("--mode", mode, "raw, times_s or times_one_minus_s")->check(CLI::IsMember({"raw", "times_s", "times_one_minus_s"}));
    auto* h_opt = scan->add_option("--H", H, "classical curvature for the s -> 1 prediction (computed when omitted)");

    // root
    auto* root = app.add_subcommand("root", "s at which the curvature changes sign");
    std::vector<double> root_p, bracket{0.1, 0.9};
    double tol_s = 1e-3;
    add_set_options(root, sets["root"]);
    add_common_options(root, common["root"], true);
    root->add_option("--p", root_p, "boundary point")->delimiter(',');
    root->add_option("--bracket", bracket, "lo,hi")->delimiter(',')->expected(2);
    root->add_option("--tol-s", tol_s, "bracket width")->capture_default_str();

    // delta
    auto* delta = app.add_subcommand("delta", "curvature threshold beta and tangent-ball radius delta_s");
    int delta_n = 2;
    double delta_alpha = 0.0;
    std::vector<double> delta_s{0.5};
    add_common_options(delta, common["delta"], false);
    delta->add_option("--n", delta_n, "dimension")->capture_default_str();
    delta->add_option("--alpha-bar", delta_alpha, "upper contribution from infinity")->required();
    delta->add_option("--s", delta_s, "s values")->delimiter(',');

    // minimize
    auto* mini = app.add_subcommand("minimize", "discrete fractional perimeter minimization");
    std::string problem_file, pgm;
    add_common_options(mini, common["minimize"], false);
    mini->add_option("--problem", problem_file, "problem JSON {domain, resolution, exterior, s, solver}")->required();
    mini->add_option("--pgm", pgm, "raster output (default <out>.pgm)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "phase table over s for a geometry preset");
    std::string preset = "quadrant-in-disc", raster_dir;
    std::vector<double> sweep_s{0.4, 0.2, 0.1, 0.05};
    int resolution = 64;
    double gamma = 0.5;
    add_common_options(sweep, common["sweep"], false);
    sweep->add_option("--preset", preset, "quadrant-in-disc, halfplane-in-disc, candy or bounded-E0")->capture_default_str();
    sweep->add_option("--s", sweep_s, "s values")->delimiter(',');
    sweep->add_option("--resolution", resolution, "cells across the domain")->capture_default_str();
    sweep->add_option("--gamma", gamma, "density-estimate constant")->capture_default_str();
    sweep->add_option("--raster-dir", raster_dir, "directory for per-s PGM rasters");

    // verify
    auto* verify = app.add_subcommand("verify", "acceptance suite, one line per criterion");
    std::vector<int> only;
    add_common_options(verify, common["verify"], false);
    verify->add_option("--only", only, "criterion numbers")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::bad_input;
    }

    try {
        std::string command;
        json config;
        if (!config_file.empty()) {
            const json doc = fracperim::read_json(config_file);
            command = doc.at("command");
            config = doc.at("config");
        } else {
            const auto subs = app.get_subcommands();
            if (subs.empty()) {
                std::cout << app.help();
                return cli::bad_input;
            }
            command = subs.front()->get_name();
            const bool quad = command == "alpha" || command == "curv" || command == "scan" || command == "root";
            config = common_json(common[command], quad);
            if (command == "alpha") {
                config["set"] = set_json(sets["alpha"]);
                config["q"] = alpha_q;
                config["r"] = alpha_r;
                config["s_grid"] = alpha_grid;
                config["closed_forms"] = closed_forms;
            } else if (command == "curv") {
                config["set"] = set_json(sets["curv"]);
                config["p"] = curv_p;
                config["s"] = curv_s;
                config["method"] = method;
                if (!tangent_ball.empty()) {
                    config["tangent_ball"] = tangent_ball;
                    config["alpha_bar"] = alpha_bar;
                    config["sigma"] = sigma;
                }
            } else if (command == "scan") {
                config["set"] = set_json(sets["scan"]);
                config["p"] = scan_p;
                config["s_grid"] = scan_grid;
                config["mode"] = mode;
                config["H"] = h_opt->count() ? json(H) : json(nullptr);
            } else if (command == "root") {
                config["set"] = set_json(sets["root"]);
                config["p"] = root_p;
                config["bracket"] = bracket;
                config["tol_s"] = tol_s;
            } else if (command == "delta") {
                config["n"] = delta_n;
                config["alpha_bar"] = delta_alpha;
                config["s"] = delta_s;
            } else if (command == "minimize") {
                json problem = fracperim::read_json(problem_file);
                if (!problem.contains("resolution")) problem["resolution"] = 32;
                if (!problem.contains("solver")) problem["solver"] = "automatic";
                config["problem"] = problem;
                if (!pgm.empty()) config["pgm"] = pgm;
            } else if (command == "sweep") {
                config["preset"] = preset;
                config["s"] = sweep_s;
                config["resolution"] = resolution;
                config["gamma"] = gamma;
                config["raster_dir"] = raster_dir;
            } else if (command == "verify") {
                config["only"] = only;
            }
        }
        return cli::run_command(command, config);
    } catch (const fracperim::Error& e) {
        std::cerr << "error " << e.what() << "\n";
        return e.code() == fracperim::ErrorCode::non_convergence ? cli::not_converged : cli::bad_input;
    } catch (const json::exception& e) {
        std::cerr << "error (bad json): " << e.what() << "\n";
        return cli::bad_input;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::bad_input;
    }
}
