#include "fracperim/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <random>

#include "fracperim/alpha.hpp"
#include "fracperim/canonical.hpp"
#include "fracperim/curvature.hpp"
#include "fracperim/grid_checks.hpp"
#include "fracperim/minimizer.hpp"
#include "fracperim/mu_bar.hpp"
#include "fracperim/sweep.hpp"
#include "fracperim/threshold_checks.hpp"
#include "fracperim/thresholds.hpp"

namespace fracperim::acceptance {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Args>
std::string fmt(const char* format, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double rel_err(double value, double target) { return std::abs(value - target) / std::abs(target); }

QuadratureConfig numeric_cfg() {
    QuadratureConfig cfg;
    cfg.closed_forms = false;
    return cfg;
}

struct Check {
    bool pass = true;
    std::string detail;
    void add(bool ok, const std::string& text) {
        pass = pass && ok;
        if (!detail.empty()) detail += "; ";
        detail += text;
    }
};

Check cone_alpha() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const SetSpec Q = canonical_set("quadrant");
    const auto cfg = numeric_cfg();
    const double s = 0.0125;
    const double scaled = s * alpha_s(Q, Vec{0.0, 0.0}, 1.0, s, cfg);
    const AlphaEstimate est = alpha_limit(Q, Vec{0.0, 0.0}, 1.0, cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.add(rel_err(scaled, kPi / 2) <= 0.02, fmt("s*alpha_s(0.0125)=%.6f rel %.2e (<=2%%)", scaled, rel_err(scaled, kPi / 2)));
    c.add(rel_err(est.extrapolated_limit, kPi / 2) <= 0.01,
          fmt("limit=%.6f rel %.2e (<=1%%)", est.extrapolated_limit, rel_err(est.extrapolated_limit, kPi / 2)));
    c.add(secs < 10.0, fmt("%.2fs (<10s)", secs));
    return c;
}

Check cubic_alpha() {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    const AlphaEstimate est = alpha_limit(canonical_set("cubic_supergraph"), Vec{0.0, 0.0}, 1.0, numeric_cfg());
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.add(rel_err(est.extrapolated_limit, kPi) <= 0.03,
          fmt("limit=%.6f rel %.2e (<=3%%)", est.extrapolated_limit, rel_err(est.extrapolated_limit, kPi)));
    c.add(secs < 60.0, fmt("%.2fs (<60s)", secs));
    return c;
}

Check parabola_alpha() {
    Check c;
    const AlphaEstimate est = alpha_limit(canonical_set("parabola", {{"n", 2}}), Vec{0.0, 0.0}, 1.0, numeric_cfg());
    bool monotone = true;
    for (std::size_t k = 1; k < est.scaled_values.size(); ++k)
        monotone = monotone && est.scaled_values[k] < est.scaled_values[k - 1];
    const double last = est.scaled_values.back();
    c.add(monotone, fmt("s*alpha_s decreasing over %zu grid points: %s", est.s_grid.size(), monotone ? "yes" : "no"));
    c.add(last < 0.05 * omega(2), fmt("final %.5f (<%.5f)", last, 0.05 * omega(2)));
    return c;
}

Check bounded_graph_alpha() {
    Check c;
    const AlphaEstimate est = alpha_limit(canonical_set("tanh_supergraph", {{"n", 2}}), Vec{0.0, 0.0}, 1.0, numeric_cfg());
    c.add(rel_err(est.extrapolated_limit, kPi) <= 0.03,
          fmt("limit=%.6f rel %.2e (<=3%%)", est.extrapolated_limit, rel_err(est.extrapolated_limit, kPi)));
    return c;
}

Check cone_over_set_alpha() {
    Check c;
    const SetSpec E = canonical_set("alphasigma", {{"n", 3}, {"k", 1.0}, {"eps_bar", 0.5}});
    const auto closed = alpha_closed_form(E);
    if (!closed) {
        c.add(false, "no closed form");
        return c;
    }
    const AlphaEstimate est = alpha_limit(E, Vec{0.0, 0.0, 0.0}, 1.0, numeric_cfg());
    c.add(rel_err(est.extrapolated_limit, closed->value) <= 0.03,
          fmt("numeric %.6f closed %.6f rel %.2e (<=3%%)", est.extrapolated_limit, closed->value,
              rel_err(est.extrapolated_limit, closed->value)));
    return c;
}

Check small_s_curvature() {
    Check c;
    const double s = 0.0125;
    const CurvatureResult ball = curvature_at(SetSpec::ball(Vec{0.0, 0.0}, 1.0), Vec{0.0, -1.0}, s);
    c.add(rel_err(ball.scaled_s0, omega(2)) <= 0.05,
          fmt("ball s*I_s=%.5f rel %.2e", ball.scaled_s0, rel_err(ball.scaled_s0, omega(2))));
    const SetSpec Q = canonical_set("quadrant");
    const CurvatureResult edge = curvature_at(Q, Vec{1.0, 0.0}, s);
    c.add(rel_err(edge.scaled_s0, kPi) <= 0.05,
          fmt("quadrant edge s*I_s=%.5f rel %.2e", edge.scaled_s0, rel_err(edge.scaled_s0, kPi)));
    // The apex is not a regular point; the truncated integral at unit radius carries the same limit.
    const double apex = s * curvature_truncated(Q, Vec{0.0, 0.0}, s, 1.0);
    c.add(rel_err(apex, kPi) <= 0.05, fmt("apex s*I_s^1=%.5f rel %.2e (target pi, <=5%%)", apex, rel_err(apex, kPi)));
    return c;
}

Check classical_limit() {
    Check c;
    const CurvatureScan scan = curvature_scan(SetSpec::ball(Vec{0.0, 0.0}, 1.0), Vec{0.0, -1.0},
                                              {0.8, 0.9, 0.95, 0.975}, ScanMode::times_one_minus_s);
    const double lim = scan.extrapolated_limit.value_or(NAN);
    c.add(rel_err(lim, 2.0) <= 0.05, fmt("extrapolated (1-s)I_s=%.5f rel %.2e (target 2, <=5%%)", lim, rel_err(lim, 2.0)));
    return c;
}

Check symmetric_exactness() {
    Check c;
    const std::vector<double> s_list{0.1, 0.3, 0.5, 0.7, 0.9};
    for (const auto& [name, E] : {std::pair{"halfspace", canonical_set("halfspace", {{"n", 2}})},
                                  std::pair{"cubic", canonical_set("cubic_supergraph")}}) {
        double worst = 0.0, max_abs = 0.0, max_err = 0.0;
        bool ok = true;
        for (double s : s_list) {
            const CurvatureResult r = curvature_pv(E, Vec{0.0, 0.0}, s);
            ok = ok && std::abs(r.value) <= 10.0 * r.error_estimate;
            worst = std::max(worst, std::abs(r.value) / std::max(r.error_estimate, 1e-300));
            max_abs = std::max(max_abs, std::abs(r.value));
            max_err = std::max(max_err, r.error_estimate);
        }
        c.add(ok, fmt("%s over 5 s: max |I_s| %.2e, max err %.2e, max ratio %.3g (<=10)", name, max_abs, max_err, worst));
    }
    return c;
}

Check annulus_root() {
    Check c;
    const SetSpec A = canonical_set("annulus", {{"r_in", 1.0}, {"r_out", 2.0}});
    const RootReport r = sign_change_root(A, Vec{1.0, 0.0}, 0.1, 0.9);
    c.add(!r.degenerate, "not degenerate");
    c.add(std::abs(r.value_at_root) <= 2.0 * r.error_at_root,
          fmt("root %.5f |I|=%.2e err=%.2e", r.root, std::abs(r.value_at_root), r.error_at_root));
    c.add(r.width <= 1e-3, fmt("width %.2e", r.width));
    c.add(r.value_lo > 0.0 && r.value_hi < 0.0, fmt("I(0.1)=%.4g > 0, I(0.9)=%.4g < 0", r.value_lo, r.value_hi));
    return c;
}

Check alpha_calculus() {
    Check c;
    const auto cfg = numeric_cfg();
    const SetSpec T = canonical_set("tanh_supergraph", {{"n", 2}});
    const SetSpec Q = canonical_set("quadrant");
    const SetSpec H = canonical_set("halfspace", {{"n", 2}});
    const SetSpec F = SetSpec::unite({Q, SetSpec::ball(Vec{-1.0, 0.5}, 0.7)}).minus(SetSpec::ball(Vec{2.0, 2.0}, 0.4));
    const CalculusReport sc = alpha_calculus_check(T, T, AlphaRelation::scaling, cfg, 20);
    c.add(sc.pass, fmt("scaling: 20 samples, max rel gap %.2e", sc.max_relative_gap));
    const CalculusReport mo = alpha_calculus_check(Q, H, AlphaRelation::monotone, cfg, 20);
    c.add(mo.pass, fmt("monotone: max violation %.2e", mo.max_violation));
    const CalculusReport sd = alpha_calculus_check(Q, F, AlphaRelation::symm_diff, cfg, 20);
    c.add(sd.pass, fmt("symm_diff: max violation %.2e", sd.max_violation));
    const DualityReport du = complement_duality_check(T, Vec{0.0, 0.0}, 1.0, cfg);
    c.add(du.pass, fmt("duality: %.6f + %.6f vs %.6f (bar %.1e)", du.alpha_E, du.alpha_CE, du.omega_n, du.error_bar));
    return c;
}

Check mu_bar() {
    Check c;
    const Domain disc = Domain::ball(Vec{0.0, 0.0}, 1.0);
    const MuBarReport r = mu_bar_check(canonical_set("quadrant").minus(disc.as_set()), disc);
    c.add(r.pass, fmt("grid limit %.5f vs %.5f rel %.2e (<=10%%)", r.grid_limit, r.target, r.rel_error));
    if (r.continuum_limit) c.add(rel_err(*r.continuum_limit, r.target) <= 0.1, fmt("continuum %.5f", *r.continuum_limit));
    return c;
}

struct SmallInstance {
    std::string name;
    SetSpec exterior;
};

std::vector<SmallInstance> small_instances(const Domain& box) {
    const SetSpec b = box.as_set();
    return {
        {"halfplane-below", SetSpec::half_space(Vec{0.0, -1.0}, 0.0).minus(b)},
        {"halfplane-above", SetSpec::half_space(Vec{0.0, 1.0}, 0.0).minus(b)},
        {"diagonal", SetSpec::half_space(Vec{1.0, 1.0}.normalized(), 0.1).minus(b)},
        {"quadrant", canonical_set("quadrant").minus(b)},
        {"far-ball", SetSpec::ball(Vec{3.0, 0.0}, 0.5)},
        {"empty", SetSpec::empty(2)},
    };
}

Check oracle_equivalence() {
    Check c;
    const Domain box = Domain::box(Vec{-1.0, -1.0}, Vec{1.0, 1.0});
    GridOptions go;
    go.resolution = 4;
    int instances = 0, min_agree = 8;
    double worst_drift = 0.0;
    std::string misses;
    for (const auto& inst : small_instances(box)) {
        for (double s : {0.1, 0.5, 0.9}) {
            const GridProblem p = build_grid_problem(box, inst.exterior, s, go);
            const MinimizeResult ex = minimize(p, {});
            SolverConfig an_cfg;
            an_cfg.solver = SolverKind::anneal;
            const MinimizeResult an = minimize(p, an_cfg);
            int agree = 0;
            for (double e : an.restart_energies)
                if (std::abs(e - ex.energy) <= 1e-9 * std::max(std::abs(ex.energy), 1e-300) || e == ex.energy) ++agree;
            min_agree = std::min(min_agree, agree);
            if (agree < 7) misses += fmt(" %s@%g", inst.name.c_str(), s);
            FlipEvaluator ev(p, State(p.size(), 0));
            std::mt19937_64 rng(instances + 1);
            for (int k = 0; k < 2000; ++k) ev.flip(rng() % p.size());
            const double full = discrete_perimeter(p, ev.state());
            worst_drift = std::max(worst_drift, std::abs(ev.energy() - full) / std::max(std::abs(full), 1e-300));
            ++instances;
        }
    }
    c.add(min_agree >= 7, fmt("%d instances, min restarts at exhaustive optimum %d/8%s", instances, min_agree, misses.c_str()));
    c.add(worst_drift <= 1e-9, fmt("incremental drift %.2e (<=1e-9)", worst_drift));
    return c;
}

struct SweepCache {
    std::map<std::string, std::vector<PhaseRow>> rows;
    const std::vector<PhaseRow>& get(const std::string& preset) {
        auto it = rows.find(preset);
        if (it == rows.end()) it = rows.emplace(preset, stickiness_sweep(sweep_preset(preset), {0.4, 0.2, 0.1, 0.05})).first;
        return it->second;
    }
};

Check stickiness_trend(SweepCache& cache) {
    Check c;
    const auto& rows = cache.get("quadrant-in-disc");
    bool monotone = true;
    std::string occ;
    for (std::size_t k = 0; k < rows.size(); ++k) {
        if (k > 0) monotone = monotone && rows[k].occupancy <= rows[k - 1].occupancy;
        occ += fmt("%s%g:%.3f", k ? " " : "", rows[k].s, rows[k].occupancy);
    }
    c.add(rows.back().occupancy < 0.1, fmt("occupancy at s=0.05 %.4f (<0.1)", rows.back().occupancy));
    c.add(monotone, "non-increasing as s decreases [" + occ + "]");
    return c;
}

Check checkers(SweepCache& cache) {
    Check c;
    int mp = 0, mp_pass = 0, dens_pass = 0, total = 0;
    std::string failures;
    for (const auto& name : sweep_preset_names()) {
        for (const auto& row : cache.get(name)) {
            ++total;
            if (row.max_principle_pass) {
                ++mp;
                mp_pass += *row.max_principle_pass ? 1 : 0;
                if (!*row.max_principle_pass) failures += fmt(" mp:%s@%g", name.c_str(), row.s);
            }
            dens_pass += row.density_pass ? 1 : 0;
            if (!row.density_pass) failures += fmt(" density:%s@%g", name.c_str(), row.s);
        }
    }
    c.add(mp_pass == mp && dens_pass == total,
          fmt("sweep outputs: maximum principle %d/%d, density estimate %d/%d%s", mp_pass, mp, dens_pass, total, failures.c_str()));

    const SweepPreset q = sweep_preset("quadrant-in-disc");
    GridOptions go;
    go.resolution = 16;
    const GridProblem p = build_grid_problem(q.omega, q.exterior, 0.05, go);
    const double delta = std::max(2.0 * p.h, delta_s(0.05, q.alpha_bar, 2));
    const auto full = density_estimate_check(p, State(p.size(), 1), q.alpha_bar, delta, 0.5);
    c.add(!full.pass && full.worst_ratio == 0.0, fmt("full state: density check %s, worst ratio %.3g", full.pass ? "passes" : "fails", full.worst_ratio));

    const SweepPreset hp = sweep_preset("halfplane-in-disc");
    const GridProblem ph = build_grid_problem(hp.omega, hp.exterior, 0.1, go);
    State adversarial(ph.size(), 0);
    for (std::size_t i = 0; i < ph.size(); ++i) {
        if (ph.centers[i][1] > 0.5) {
            adversarial[i] = 1;
            break;
        }
    }
    const auto& [nu, a] = hp.empty_half_planes.front();
    const auto mpr = maximum_principle_check(ph, adversarial, nu, a);
    c.add(!mpr.pass && mpr.violations == 1, fmt("one misplaced cell: maximum principle %s with %d violation(s)", mpr.pass ? "passes" : "fails", mpr.violations));
    return c;
}

Check delta_values() {
    Check c;
    double worst = 0.0;
    bool monotone = true;
    double prev = 0.0;
    for (double s : {0.05, 0.1, 0.25, 0.5, 0.9}) {
        const double v = delta_s(s, 0.0, 2), ref = std::pow(5.0 / 6.0, 1.0 / s);
        worst = std::max(worst, std::abs(v - ref));
        monotone = monotone && v > prev;
        prev = v;
    }
    c.add(worst <= 1e-12, fmt("max |delta_s - (5/6)^(1/s)| = %.2e at 5 points", worst));
    c.add(monotone, "increasing in s");
    return c;
}

const std::vector<std::string>& titles() {
    static const std::vector<std::string> t{
        "cone contribution from infinity",
        "cubic supergraph contribution from infinity",
        "parabola contribution from infinity",
        "bounded graph contribution from infinity",
        "cone over a spherical set in R^3",
        "small-s curvature limit",
        "s->1 classical curvature limit",
        "odd-symmetry exactness",
        "sign-change root",
        "alpha calculus",
        "weighted measure limit",
        "minimizer oracle equivalence",
        "stickiness trend",
        "maximum principle and density checkers",
        "delta_s values",
    };
    return t;
}

}  // namespace

int criterion_count() { return static_cast<int>(titles().size()); }

std::string criterion_title(int id) { return titles().at(id - 1); }

std::vector<Outcome> run(const std::vector<int>& only, const std::function<void(const Outcome&)>& report) {
    SweepCache cache;
    const std::vector<std::function<Check()>> checks{
        cone_alpha,        cubic_alpha,     parabola_alpha,      bounded_graph_alpha, cone_over_set_alpha,
        small_s_curvature, classical_limit, symmetric_exactness, annulus_root,        alpha_calculus,
        mu_bar,            oracle_equivalence,
        [&] { return stickiness_trend(cache); },
        [&] { return checkers(cache); },
        delta_values,
    };
    std::vector<Outcome> out;
    for (int id = 1; id <= criterion_count(); ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        Outcome o;
        o.id = id;
        o.title = criterion_title(id);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const Check c = checks[id - 1]();
            o.pass = c.pass;
            o.detail = c.detail;
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("error: ") + e.what();
        }
        o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (report) report(o);
        out.push_back(o);
    }
    return out;
}

std::string format_line(const Outcome& o) {
    return fmt("[%s] AC%02d %s: %s (%.1fs)", o.pass ? "PASS" : "FAIL", o.id, o.title.c_str(), o.detail.c_str(), o.seconds);
}

}  // namespace fracperim::acceptance
