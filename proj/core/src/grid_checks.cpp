#include "fracperim/grid_checks.hpp"

#include <algorithm>
#include <cmath>

#include "fracperim/error.hpp"
#include "fracperim/thresholds.hpp"

namespace fracperim {

namespace {

// Admissible centers: pitch delta/4 lattice over the domain's box with signed distance below -delta.
template <class Visit>
long for_each_center(const Domain& omega, double delta, Visit&& visit) {
    const int n = omega.dim();
    const Vec lo = omega.lower_corner(), hi = omega.upper_corner();
    const double pitch = delta / 4.0;
    std::vector<int> count(n);
    for (int a = 0; a < n; ++a) count[a] = static_cast<int>(std::floor((hi[a] - lo[a]) / pitch)) + 1;
    long checked = 0;
    const long total = n == 1 ? count[0] : static_cast<long>(count[0]) * count[1];
    for (long k = 0; k < total; ++k) {
        Vec x(n);
        x[0] = lo[0] + (n == 1 ? k : k / count[1]) * pitch;
        if (n == 2) x[1] = lo[1] + (k % count[1]) * pitch;
        if (n == 3) fail(ErrorCode::dimension_mismatch, "density predicates support n = 1, 2");
        if (signed_distance(omega, x) >= -delta) continue;
        ++checked;
        if (!visit(x)) break;
    }
    return checked;
}

double cell_distance(const Vec& center, double h, const Vec& x) {
    double d2 = 0.0;
    for (int a = 0; a < x.dim(); ++a) {
        const double g = std::max(0.0, std::abs(x[a] - center[a]) - 0.5 * h);
        d2 += g * g;
    }
    return std::sqrt(d2);
}

}  // namespace

DenseReport is_delta_dense(const GridProblem& p, const State& state, double delta) {
    require(state.size() == p.size(), ErrorCode::dimension_mismatch, "state size differs from the domain cell count");
    require(delta > p.h, ErrorCode::invalid_argument, "delta must exceed the cell size");
    DenseReport r;
    r.centers_checked = for_each_center(p.omega, delta, [&](const Vec& x) {
        for (std::size_t i = 0; i < p.size(); ++i)
            if (state[i] && cell_distance(p.centers[i], p.h, x) < delta) return true;
        r.dense = false;
        r.witness = x;
        return false;
    });
    return r;
}

DenseReport is_delta_dense(const SetSpec& E, const Domain& omega, double delta, double sample_pitch) {
    require(delta > 0.0, ErrorCode::invalid_argument, "delta must be positive");
    require(E.dim() == omega.dim(), ErrorCode::dimension_mismatch, "set and domain dimensions differ");
    const double pitch = sample_pitch > 0.0 ? sample_pitch : delta / 16.0;
    const int m = static_cast<int>(std::ceil(delta / pitch));
    const int n = omega.dim();
    DenseReport r;
    r.centers_checked = for_each_center(omega, delta, [&](const Vec& x) {
        const int span = 2 * m + 1;
        const long total = n == 1 ? span : static_cast<long>(span) * span;
        for (long k = 0; k < total; ++k) {
            Vec y = x;
            y[0] += ((n == 1 ? k : k / span) - m) * pitch;
            if (n == 2) y[1] += (k % span - m) * pitch;
            if ((y - x).norm() < delta && E.inside(y)) return true;
        }
        r.dense = false;
        r.witness = x;
        return false;
    });
    return r;
}

DensityEstimateReport density_estimate_check(const GridProblem& p, const State& state, double alpha_bar,
                                             double delta, double gamma) {
    require(state.size() == p.size(), ErrorCode::dimension_mismatch, "state size differs from the domain cell count");
    require(gamma > 0.0 && gamma < 1.0, ErrorCode::invalid_argument, "gamma must lie in (0,1)");
    require(delta > p.h, ErrorCode::invalid_argument, "delta must exceed the cell size");
    const double w = omega(p.n);
    require(alpha_bar >= 0.0 && alpha_bar < w, ErrorCode::invalid_argument, "alpha_bar must lie in [0, omega_n)");
    DensityEstimateReport r;
    r.bound = gamma * (w - 2.0 * alpha_bar) / (w - alpha_bar);
    for (std::size_t c = 0; c < p.size(); ++c) {
        const Vec& x = p.centers[c];
        long total = 0, empty = 0, inner = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double d = (p.centers[i] - x).norm();
            if (d >= delta) continue;
            ++total;
            if (!state[i]) ++empty;
            if (d < delta - p.h) ++inner;
        }
        ++r.centers_checked;
        const double ratio = static_cast<double>(empty) / static_cast<double>(total);
        if (ratio < r.worst_ratio || !r.worst_center) {
            r.worst_ratio = ratio;
            r.worst_center = x;
        }
        // One cell layer of slack: the bound is taken against the ball shrunk by h.
        if (static_cast<double>(empty) < r.bound * static_cast<double>(std::max(inner, 1L))) r.pass = false;
    }
    return r;
}

MaximumPrincipleReport maximum_principle_check(const GridProblem& p, const State& state, const Vec& nu, double a) {
    require(state.size() == p.size(), ErrorCode::dimension_mismatch, "state size differs from the domain cell count");
    require(nu.dim() == p.n && std::abs(nu.norm() - 1.0) < 1e-9, ErrorCode::invalid_argument,
            "nu must be a unit vector of the grid dimension");
    double reach = 0.0;
    for (int k = 0; k < p.n; ++k) reach += 0.5 * p.h * std::abs(nu[k]);
    for (std::size_t b = 0; b < p.theta.size(); ++b) {
        if (p.in_domain[b] || p.theta[b] == 0.0) continue;
        Vec c(p.n);
        const int ix = p.n == 1 ? static_cast<int>(b) : static_cast<int>(b / p.dims[1]);
        c[0] = p.origin[0] + (ix + 0.5) * p.h;
        if (p.n == 2) c[1] = p.origin[1] + (static_cast<int>(b % p.dims[1]) + 0.5) * p.h;
        if (c.dot(nu) + reach <= a)
            fail(ErrorCode::precondition_violated, "exterior data meets the half-space at cell " + c.str());
    }
    MaximumPrincipleReport r;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (state[i] && p.centers[i].dot(nu) <= a - p.h) {
            ++r.violations;
            if (!r.first_violation) r.first_violation = p.centers[i];
        }
    r.pass = r.violations == 0;
    return r;
}

}  // namespace fracperim
