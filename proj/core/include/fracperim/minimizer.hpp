#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "fracperim/domain.hpp"
#include "fracperim/kernel_table.hpp"
#include "fracperim/quadrature.hpp"
#include "fracperim/set_spec.hpp"

namespace fracperim {

struct GridOptions {
    int resolution = 32;   // cells along the longest side of the domain's bounding box
    int collar = 8;        // exterior cells rasterized around that box
    int subsamples = 4;    // per axis, for exterior occupancy fractions
    int tail_degree = 16;  // Chebyshev degree per axis for the interaction with the exterior beyond the collar
    double tail_rel_tol = 1e-7;
    RayOptions rays = [] {
        RayOptions r;
        r.growth = 1.1;  // rays for the tail start at least a collar away from the domain
        return r;
    }();
};

// Cells of side h on a box covering the domain plus the collar. Domain cells are those whose centers lie in the
// domain; every other cell carries the exterior's occupancy fraction.
struct GridProblem {
    int n = 0;
    double s = 0.0;
    double h = 0.0;
    Domain omega;
    SetSpec exterior;
    GridOptions options;

    Vec origin;             // lower corner of the box
    std::vector<int> dims;  // box cells per axis; last axis fastest
    std::vector<std::size_t> cells;             // box index of each domain cell
    std::vector<std::vector<int>> coords;       // integer coordinates of each domain cell
    std::vector<Vec> centers;                   // centers of the domain cells
    std::vector<double> theta;                  // per box cell: exterior fraction, 0 on domain cells
    std::vector<std::uint8_t> in_domain;        // per box cell
    std::vector<double> tail_exterior, tail_full;  // per domain cell: interaction beyond the box
    std::vector<double> to_exterior;            // A_i: interaction with the exterior data
    std::vector<double> to_complement;          // B_i: interaction with the non-domain part of the complement
    std::vector<double> row_sum;                // sum of K over the other domain cells
    KernelTable kernel;

    std::size_t size() const { return cells.size(); }
    double pair(std::size_t i, std::size_t j) const;
};

// Interaction density at x inside the box [lo, hi] with the exterior beyond the box, and with the whole region
// beyond it.
std::pair<double, double> beyond_box_density(const SetSpec& exterior, const Vec& x, const Vec& lo, const Vec& hi,
                                             double s, const GridOptions& opt = {});

GridProblem build_grid_problem(const Domain& omega, const SetSpec& exterior, double s, const GridOptions& opt = {});

// Same grid, kernel and tails with the exterior data replaced by its complement.
GridProblem complement_problem(const GridProblem& p);

using State = std::vector<std::uint8_t>;

// Discrete P_s(E, Omega) recomputed from scratch.
double discrete_perimeter(const GridProblem& p, const State& state);
// Energy change of flipping cell i, recomputed from scratch.
double flip_delta(const GridProblem& p, const State& state, std::size_t i);

// Incrementally maintained energy and single-flip deltas.
class FlipEvaluator {
public:
    FlipEvaluator(const GridProblem& p, State initial);
    double energy() const { return energy_; }
    const State& state() const { return state_; }
    double delta(std::size_t i) const;
    void flip(std::size_t i);

private:
    const GridProblem* p_;
    State state_;
    std::vector<double> occupied_sum_;  // sum of K over occupied other domain cells
    double energy_ = 0.0;
};

enum class SolverKind { automatic, exhaustive, anneal };
std::string to_string(SolverKind k);
SolverKind solver_from_string(const std::string& s);

struct SolverConfig {
    SolverKind solver = SolverKind::automatic;
    int exhaustive_limit = 20;
    int restarts = 8;
    int sweeps = 200;
    double cooling = 0.995;
    std::uint64_t seed = 20240611;
};

struct MinimizeResult {
    State state;
    double energy = 0.0;
    SolverKind solver = SolverKind::exhaustive;
    int restarts_agreeing = 1;
    bool low_confidence = false;
    std::vector<double> restart_energies;  // by restart index
    std::vector<std::uint64_t> seeds;
    std::vector<double> trace;             // best restart: energy after each sweep, then after descent
};

MinimizeResult minimize(const GridProblem& p, const SolverConfig& cfg = {});

// True when no single flip lowers the energy by more than the rounding level.
bool is_flip_stable(const GridProblem& p, const State& state);

double occupancy(const GridProblem& p, const State& state);

// Box raster: domain cells from the state, other cells from the exterior fraction rounded at 1/2.
RasterGrid state_raster(const GridProblem& p, const State& state);

}  // namespace fracperim
