#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fracperim/set_spec.hpp"
#include "fracperim/vec.hpp"

namespace fracperim {

struct QuadratureConfig {
    // Truncation radii for principal values, decreasing; empty selects 12 halvings from r_local / 2.
    std::vector<double> pv_rho_schedule;
    double r_local = 1.0;
    double tail_radius = 0.0;  // 0 selects 2 max(1, diameter scale)
    double rel_tol = 1e-6;
    double abs_tol = 1e-12;
    int max_subdiv = 4000;      // adaptive intervals per one-dimensional integral
    int angular_order = 15;     // Kronrod points per panel: 15, 21, 31, 41, 51 or 61
    int angular_panels = 8;     // initial panels over a full circle
    double radial_grading = 0;  // 0 selects 1/(1-s)
    double pv_inner_cutoff = 1e-13;  // rays start at this distance, relative to 1 + |q|
    RayOptions rays;
    bool closed_forms = true;  // use exact values for cones, half-spaces and bounded sets when they apply
    std::uint64_t mc_seed = 20240611;

    std::vector<double> rho_schedule() const;
};

// f(x, out) writes `dim` components at x.
using VecIntegrand = std::function<void(double, double*)>;

struct AdaptiveOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-14;
    int max_intervals = 2000;
    int order = 15;
    std::vector<bool> control;  // components driving refinement; empty means component 0
    std::vector<int> scale_of;  // relative tolerance of component c is taken against |value[scale_of[c]]|
};

struct AdaptiveResult {
    std::vector<double> value;
    std::vector<double> error;
    long evaluations = 0;
    bool converged = true;
};

// Globally adaptive Gauss-Kronrod over the panels [breaks[k], breaks[k+1]].
AdaptiveResult integrate_adaptive(const VecIntegrand& f, int dim, const std::vector<double>& breaks,
                                  const AdaptiveOptions& opt = {});

// Same over [0, a] after theta = a u^p; resolves integrable singularities at 0 of order theta^{p^{-1}-1}.
AdaptiveResult integrate_graded(const VecIntegrand& f, int dim, double a, double p, const AdaptiveOptions& opt = {});

void accumulate(AdaptiveResult& into, const AdaptiveResult& part);

// Outer adaptive integral of weight(x) * inner(x); inner errors are integrated into the outer error.
AdaptiveResult integrate_nested(int dim, const std::vector<double>& outer_breaks, const AdaptiveOptions& opt,
                                const std::function<AdaptiveResult(double)>& inner,
                                const std::function<double(double)>& weight);

// f(direction, out) for unit directions.
using DirIntegrand = std::function<void(const Vec&, double*)>;

struct SphereOptions {
    AdaptiveOptions adaptive;
    int panels = 8;        // initial panels per full turn
    double grading = 1.0;  // power p of the graded map near the equator; 1 disables grading
    double graded_width = 0.25;
    std::vector<double> extra_angles;  // n = 2: additional panel breaks (polar angles) for integrate_sphere
};

// Integral over S^{n-1} with surface measure.
AdaptiveResult integrate_sphere(int n, int dim, const DirIntegrand& f, const SphereOptions& opt);

// Integral over the open hemisphere {d : d . pole > 0}, graded toward the equator when opt.grading > 1.
// For n = 1 this is f(pole).
AdaptiveResult integrate_hemisphere(const Vec& pole, int dim, const DirIntegrand& f, const SphereOptions& opt);

}  // namespace fracperim
