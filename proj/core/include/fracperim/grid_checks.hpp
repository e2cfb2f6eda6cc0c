#pragma once

#include <optional>
#include <string>

#include "fracperim/domain.hpp"
#include "fracperim/minimizer.hpp"

namespace fracperim {

struct DenseReport {
    bool dense = true;
    std::optional<Vec> witness;  // center of a ball B_delta inside the domain missing the set
    long centers_checked = 0;    // zero when no ball of radius delta fits: the predicate holds vacuously
};

// Centers on a grid of pitch delta/4 with B_delta(x) compactly inside the domain.
// Raster form: a cell meets the ball when its distance to x is below delta; requires delta > cell size.
DenseReport is_delta_dense(const GridProblem& p, const State& state, double delta);
// Set form: sample points of pitch `sample_pitch` (0 selects delta/16) inside each ball.
DenseReport is_delta_dense(const SetSpec& E, const Domain& omega, double delta, double sample_pitch = 0.0);

struct DensityEstimateReport {
    bool pass = true;
    double bound = 0.0;        // gamma (omega_n - 2 alpha_bar) / (omega_n - alpha_bar)
    double worst_ratio = 1.0;  // min over centers of |(Omega cap B_delta) \ E| / |Omega cap B_delta|
    std::optional<Vec> worst_center;
    long centers_checked = 0;
};

// Centers at all domain cells; the bound is taken against the ball of radius delta - h (one cell layer of slack).
DensityEstimateReport density_estimate_check(const GridProblem& p, const State& state, double alpha_bar,
                                             double delta, double gamma);

struct MaximumPrincipleReport {
    bool pass = true;
    long violations = 0;  // occupied domain cells with center . nu <= a - h
    std::optional<Vec> first_violation;
};

// Requires exterior cells lying entirely in {x . nu <= a} to be empty; throws precondition_violated otherwise.
MaximumPrincipleReport maximum_principle_check(const GridProblem& p, const State& state, const Vec& nu, double a);

}  // namespace fracperim
