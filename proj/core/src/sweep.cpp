#include "fracperim/sweep.hpp"

#include <algorithm>
#include <cmath>

#include "fracperim/canonical.hpp"
#include "fracperim/error.hpp"
#include "fracperim/thresholds.hpp"

namespace fracperim {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<std::string> sweep_preset_names() {
    return {"quadrant-in-disc", "halfplane-in-disc", "candy", "bounded-E0"};
}

SweepPreset sweep_preset(const std::string& name) {
    SweepPreset p;
    p.name = name;
    p.omega = Domain::ball(Vec{0.0, 0.0}, 1.0);
    const SetSpec disc = p.omega.as_set();
    if (name == "quadrant-in-disc") {
        p.exterior = canonical_set("quadrant").minus(disc);
        p.alpha_bar = kPi / 2;
        p.empty_half_planes = {{Vec{1.0, 0.0}, 0.0}, {Vec{0.0, 1.0}, 0.0}};
    } else if (name == "halfplane-in-disc") {
        const SetSpec lower = SetSpec::half_space(Vec{0.0, -1.0}, 0.0);
        p.exterior = lower.minus(disc);
        p.alpha_bar = kPi;
        p.reference = lower;
        p.empty_half_planes = {{Vec{0.0, -1.0}, 0.0}};
    } else if (name == "candy") {
        p.exterior = canonical_set("candy").minus(disc);
        p.alpha_bar = 0.0;
    } else if (name == "bounded-E0") {
        p.exterior = SetSpec::ball(Vec{3.0, 0.0}, 0.5);
        p.alpha_bar = 0.0;
        p.empty_half_planes = {{Vec{1.0, 0.0}, 2.5}};
    } else {
        fail(ErrorCode::invalid_argument, "unknown sweep preset '" + name + "'");
    }
    return p;
}

std::string to_string(Phase p) {
    switch (p) {
        case Phase::empty: return "empty";
        case Phase::full: return "full";
        case Phase::delta_dense: return "delta_dense";
        case Phase::trace: return "trace";
        case Phase::other: return "other";
    }
    return "other";
}

Phase classify(const GridProblem& p, const State& state, double delta, const std::optional<SetSpec>& reference) {
    const auto occupied = std::count(state.begin(), state.end(), 1);
    if (occupied == 0) return Phase::empty;
    if (static_cast<std::size_t>(occupied) == state.size()) return Phase::full;
    if (reference) {
        bool match = true;
        for (std::size_t i = 0; i < p.size() && match; ++i) {
            const Vec& c = p.centers[i];
            const bool in = reference->inside(c);
            if (static_cast<bool>(state[i]) == in) continue;
            // Mismatch allowed when a point within one cell has the other membership.
            bool near_boundary = false;
            for (int dx = -1; dx <= 1 && !near_boundary; ++dx)
                for (int dy = -1; dy <= 1 && !near_boundary; ++dy)
                    near_boundary = reference->inside(c + Vec{dx * p.h, dy * p.h}) != in;
            match = near_boundary;
        }
        if (match) return Phase::trace;
    }
    if (delta > p.h && is_delta_dense(p, state, delta).dense) return Phase::delta_dense;
    return Phase::other;
}

std::vector<PhaseRow> stickiness_sweep(const SweepPreset& preset, const std::vector<double>& s_list,
                                       const SweepOptions& opt) {
    std::vector<PhaseRow> rows;
    const ThresholdSet th = ThresholdSet::make(preset.omega.dim(), preset.alpha_bar);
    for (double s : s_list) {
        const GridProblem P = build_grid_problem(preset.omega, preset.exterior, s, opt.grid);
        PhaseRow row;
        row.s = s;
        row.preset = preset.name;
        row.result = minimize(P, opt.solver);
        const State& st = row.result.state;
        row.occupancy = occupancy(P, st);
        row.energy = row.result.energy;
        row.restarts_agreeing = row.result.restarts_agreeing;
        row.low_confidence = row.result.low_confidence;
        if (th.positive_regime()) row.delta_s = th.delta_of_s(s);
        const double floor_delta = 2.0 * P.h;
        row.delta_used = std::max(row.delta_s.value_or(floor_delta), floor_delta);
        row.clamp_active = !row.delta_s || *row.delta_s < floor_delta;
        row.classification = classify(P, st, row.delta_used, preset.reference);
        if (!preset.empty_half_planes.empty()) {
            bool ok = true;
            for (const auto& [nu, a] : preset.empty_half_planes) ok = ok && maximum_principle_check(P, st, nu, a).pass;
            row.max_principle_pass = ok;
        }
        row.density_pass = density_estimate_check(P, st, preset.alpha_bar, row.delta_used, opt.gamma).pass;
        row.raster = state_raster(P, st);
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace fracperim
