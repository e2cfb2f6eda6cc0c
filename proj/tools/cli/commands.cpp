#include "commands.hpp"

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "fracperim/acceptance.hpp"
#include "fracperim/alpha.hpp"
#include "fracperim/curvature.hpp"
#include "fracperim/domain.hpp"
#include "fracperim/error.hpp"
#include "fracperim/grid_checks.hpp"
#include "fracperim/io.hpp"
#include "fracperim/minimizer.hpp"
#include "fracperim/set_json.hpp"
#include "fracperim/sweep.hpp"
#include "fracperim/threshold_checks.hpp"
#include "fracperim/thresholds.hpp"

namespace fracperim::cli {

namespace {

using nlohmann::json;

QuadratureConfig quadrature_of(const json& c) {
    QuadratureConfig q;
    q.rel_tol = c.value("rel_tol", q.rel_tol);
    q.abs_tol = c.value("abs_tol", q.abs_tol);
    q.closed_forms = c.value("closed_forms", q.closed_forms);
    q.mc_seed = c.value("seed", q.mc_seed);
    return q;
}

Vec point_of(const json& c, const char* key, int n) {
    if (!c.contains(key) || c.at(key).empty()) return Vec(n);
    const Vec v = Vec::from(c.at(key).get<std::vector<double>>());
    require(v.dim() == n, ErrorCode::dimension_mismatch, std::string(key) + " must have " + std::to_string(n) + " coordinates");
    return v;
}

std::vector<double> list_of(const json& c, const char* key) { return c.at(key).get<std::vector<double>>(); }

// Writes `content` to config["out"] plus its sidecar, or to stdout.
void emit(const std::string& command, const json& config, const std::string& content) {
    const std::string out = config.value("out", "");
    if (out.empty()) {
        std::cout << content;
        return;
    }
    write_text(out, content);
    write_json(out + ".json", sidecar(command, config, config.value("seed", std::uint64_t{0})));
}

std::string n(double v) { return format_number(v); }

int run_alpha(const json& c) {
    const SetSpec E = set_from_json(c.at("set"));
    const AlphaEstimate est = alpha_limit(E, point_of(c, "q", E.dim()), c.value("r", 1.0), quadrature_of(c), list_of(c, "s_grid"));
    Table t{{"s", "alpha_s", "s_times_alpha_s", "closed_form_if_any"}, {}};
    const std::string closed = est.closed_form ? n(*est.closed_form) : "";
    for (std::size_t k = 0; k < est.s_grid.size(); ++k)
        t.add_row({n(est.s_grid[k]), n(est.alpha_values[k]), n(est.scaled_values[k]), closed});
    t.add_row({"error_bar", "", n(est.error_bar), ""});
    t.add_row({"extrapolated_limit", "", n(est.extrapolated_limit), closed});
    emit("alpha", c, t.to_csv());
    return est.converged ? ok : not_converged;
}

Table curvature_table() { return {{"s", "I_s", "s_I_s", "one_minus_s_I_s", "local", "tail", "err", "converged", "method"}, {}}; }

void add_curvature_row(Table& t, const CurvatureResult& r) {
    t.add_row({n(r.s), n(r.value), n(r.scaled_s0), n(r.scaled_s1), n(r.local_part), n(r.tail_part), n(r.error_estimate),
               format_bool(r.converged), r.method});
}

CurvatureResult curvature_by(const std::string& method, const SetSpec& E, const Vec& p, double s, const QuadratureConfig& q) {
    if (method == "pv") return curvature_pv(E, p, s, q);
    require(method == "auto", ErrorCode::invalid_argument, "method must be auto or pv");
    return curvature_at(E, p, s, q);
}

int run_curv(const json& c) {
    const SetSpec E = set_from_json(c.at("set"));
    const Vec p = point_of(c, "p", E.dim());
    const QuadratureConfig q = quadrature_of(c);
    if (c.contains("tangent_ball") && !c.at("tangent_ball").empty()) {
        const auto tb = c.at("tangent_ball").get<std::vector<double>>();
        require(static_cast<int>(tb.size()) == E.dim() + 1, ErrorCode::dimension_mismatch, "tangent ball needs center and radius");
        const TangentBall ball{Vec::from(std::vector<double>(tb.begin(), tb.end() - 1)), tb.back()};
        Table t{{"s", "sigma", "beta", "bound", "delta_sigma", "min_value", "pass"}, {}};
        for (double s : list_of(c, "s")) {
            const auto r = positive_curvature_check(E, p, ball, c.at("alpha_bar"), s, c.at("sigma"), q);
            t.add_row({n(r.s), n(r.sigma), n(r.beta), n(r.bound), n(r.delta_sigma), n(r.min_value), format_bool(r.pass)});
        }
        emit("curv", c, t.to_csv());
        return ok;
    }
    Table t = curvature_table();
    bool converged = true;
    for (double s : list_of(c, "s")) {
        const CurvatureResult r = curvature_by(c.value("method", "auto"), E, p, s, q);
        converged = converged && r.converged;
        add_curvature_row(t, r);
    }
    emit("curv", c, t.to_csv());
    return converged ? ok : not_converged;
}

int run_scan(const json& c) {
    const SetSpec E = set_from_json(c.at("set"));
    const Vec p = point_of(c, "p", E.dim());
    std::optional<double> H;
    if (c.contains("H") && !c.at("H").is_null()) H = c.at("H").get<double>();
    const CurvatureScan scan = curvature_scan(E, p, list_of(c, "s_grid"), scan_mode_from_string(c.at("mode")), quadrature_of(c), H);
    Table t = curvature_table();
    bool converged = true;
    for (const auto& r : scan.rows) {
        converged = converged && r.converged;
        add_curvature_row(t, r);
    }
    const std::string mode = to_string(scan.mode);
    if (scan.predicted_limit) t.add_row({"predicted_limit", "", "", "", "", "", n(*scan.predicted_limit), "", mode});
    if (scan.extrapolated_limit) t.add_row({"extrapolated_limit", "", "", "", "", "", n(*scan.extrapolated_limit), "", mode});
    emit("scan", c, t.to_csv());
    return converged ? ok : not_converged;
}

int run_root(const json& c) {
    const SetSpec E = set_from_json(c.at("set"));
    const auto bracket = list_of(c, "bracket");
    require(bracket.size() == 2, ErrorCode::invalid_argument, "bracket needs lo,hi");
    const RootReport r = sign_change_root(E, point_of(c, "p", E.dim()), bracket[0], bracket[1], quadrature_of(c), c.value("tol_s", 1e-3));
    Table t{{"root", "lo", "hi", "width", "value_lo", "value_hi", "value_at_root", "error_at_root", "evaluations", "degenerate", "retried"}, {}};
    t.add_row({n(r.root), n(r.lo), n(r.hi), n(r.width), n(r.value_lo), n(r.value_hi), n(r.value_at_root), n(r.error_at_root),
               std::to_string(r.evaluations), format_bool(r.degenerate), format_bool(r.retried)});
    emit("root", c, t.to_csv());
    return ok;
}

int run_delta(const json& c) {
    const int dim = c.value("n", 2);
    const double alpha_bar = c.at("alpha_bar");
    const ThresholdSet th = ThresholdSet::make(dim, alpha_bar);
    Table t{{"s", "n", "alpha_bar", "beta", "delta_s"}, {}};
    for (double s : list_of(c, "s")) t.add_row({n(s), std::to_string(dim), n(alpha_bar), n(th.beta), n(th.delta_of_s(s))});
    emit("delta", c, t.to_csv());
    return ok;
}

int run_minimize(const json& c) {
    const json problem = c.at("problem");
    const Domain omega = domain_from_json(problem.at("domain"));
    const SetSpec exterior = set_from_json(problem.at("exterior"));
    GridOptions go;
    go.resolution = problem.at("resolution");
    const double s = problem.at("s");
    const GridProblem P = build_grid_problem(omega, exterior, s, go);
    SolverConfig sc;
    sc.solver = solver_from_string(problem.at("solver"));
    sc.seed = c.value("seed", sc.seed);
    const MinimizeResult r = minimize(P, sc);
    std::string raster_text;
    const RasterGrid raster = state_raster(P, r.state);
    for (auto v : r.state) raster_text += v ? '1' : '0';
    json result{{"energy", r.energy},
                {"solver", to_string(r.solver)},
                {"restarts_agreeing", r.restarts_agreeing},
                {"low_confidence", r.low_confidence},
                {"restart_energies", r.restart_energies},
                {"seeds", r.seeds},
                {"trace", r.trace},
                {"occupancy", occupancy(P, r.state)},
                {"cells", P.size()},
                {"h", P.h},
                {"state", raster_text}};
    json doc = sidecar("minimize", c, sc.seed);
    doc["result"] = result;
    const std::string out = c.value("out", "");
    if (out.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        write_json(out, doc);
        write_pgm(c.value("pgm", out + ".pgm"), raster);
    }
    return r.low_confidence ? low_confidence : ok;
}

int run_sweep(const json& c) {
    SweepOptions opt;
    opt.grid.resolution = c.value("resolution", 64);
    opt.solver.seed = c.value("seed", opt.solver.seed);
    opt.gamma = c.value("gamma", opt.gamma);
    const std::string name = c.at("preset");
    const auto rows = stickiness_sweep(sweep_preset(name), list_of(c, "s"), opt);
    Table t{{"preset", "s", "classification", "occupancy", "delta_s", "delta_used", "clamp_active", "energy", "restarts_agreeing",
             "low_confidence", "max_principle", "density_estimate"},
            {}};
    bool low = false;
    const std::string raster_dir = c.value("raster_dir", "");
    if (!raster_dir.empty()) std::filesystem::create_directories(raster_dir);
    for (const auto& r : rows) {
        low = low || r.low_confidence;
        t.add_row({r.preset, n(r.s), to_string(r.classification), n(r.occupancy), r.delta_s ? n(*r.delta_s) : "", n(r.delta_used),
                   format_bool(r.clamp_active), n(r.energy), std::to_string(r.restarts_agreeing), format_bool(r.low_confidence),
                   r.max_principle_pass ? (*r.max_principle_pass ? "pass" : "fail") : "n/a", r.density_pass ? "pass" : "fail"});
        if (!raster_dir.empty()) write_pgm(raster_dir + "/" + r.preset + "_s" + n(r.s) + ".pgm", r.raster);
    }
    emit("sweep", c, t.to_csv());
    return low ? low_confidence : ok;
}

int run_verify(const json& c) {
    const auto only = c.value("only", std::vector<int>{});
    Table t{{"criterion", "title", "pass", "seconds", "detail"}, {}};
    int failed = 0;
    const auto outcomes = acceptance::run(only, [](const acceptance::Outcome& o) {
        std::printf("%s\n", acceptance::format_line(o).c_str());
        std::fflush(stdout);
    });
    for (const auto& o : outcomes) {
        failed += o.pass ? 0 : 1;
        t.add_row({std::to_string(o.id), o.title, format_bool(o.pass), n(o.seconds), o.detail});
    }
    if (!c.value("out", "").empty()) emit("verify", c, t.to_csv());
    return failed == 0 ? ok : criteria_failed;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names{"alpha", "curv", "scan", "root", "delta", "minimize", "sweep", "verify"};
    return names;
}

int run_command(const std::string& command, const json& config) {
    if (command == "alpha") return run_alpha(config);
    if (command == "curv") return run_curv(config);
    if (command == "scan") return run_scan(config);
    if (command == "root") return run_root(config);
    if (command == "delta") return run_delta(config);
    if (command == "minimize") return run_minimize(config);
    if (command == "sweep") return run_sweep(config);
    if (command == "verify") return run_verify(config);
    fail(ErrorCode::invalid_argument, "unknown command: " + command);
}

}  // namespace fracperim::cli
