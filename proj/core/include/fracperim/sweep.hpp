#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracperim/grid_checks.hpp"
#include "fracperim/minimizer.hpp"

namespace fracperim {

struct SweepPreset {
    std::string name;
    Domain omega;
    SetSpec exterior;
    double alpha_bar = 0.0;
    std::optional<SetSpec> reference;  // set whose trace on the domain is the expected outcome
    std::vector<std::pair<Vec, double>> empty_half_planes;  // (nu, a) with {x . nu <= a} missing the exterior
};

// quadrant-in-disc, halfplane-in-disc, candy, bounded-E0; the domain is the unit disc.
SweepPreset sweep_preset(const std::string& name);
std::vector<std::string> sweep_preset_names();

enum class Phase { empty, full, delta_dense, trace, other };
std::string to_string(Phase p);

struct SweepOptions {
    GridOptions grid = [] {
        GridOptions g;
        g.resolution = 64;
        return g;
    }();
    SolverConfig solver;
    double gamma = 0.5;
};

struct PhaseRow {
    double s = 0.0;
    std::string preset;
    Phase classification = Phase::other;
    double occupancy = 0.0;
    std::optional<double> delta_s;  // absent when alpha_bar >= omega_n / 2
    double delta_used = 0.0;
    bool clamp_active = false;
    double energy = 0.0;
    int restarts_agreeing = 0;
    bool low_confidence = false;
    std::optional<bool> max_principle_pass;  // absent when no half-plane misses the exterior
    bool density_pass = true;
    MinimizeResult result;
    RasterGrid raster;
};

// Trace classification tolerates mismatches within one cell of the reference boundary.
Phase classify(const GridProblem& p, const State& state, double delta, const std::optional<SetSpec>& reference);

std::vector<PhaseRow> stickiness_sweep(const SweepPreset& preset, const std::vector<double>& s_list,
                                       const SweepOptions& opt = {});

}  // namespace fracperim
