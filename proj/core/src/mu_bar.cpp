#include "fracperim/mu_bar.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>

#include "fracperim/alpha.hpp"
#include "fracperim/error.hpp"
#include "fracperim/singular_integrals.hpp"
#include "fracperim/thresholds.hpp"

namespace fracperim {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_disjoint(const SetSpec& E0, const Domain& omega) {
    const int n = omega.dim();
    const Vec lo = omega.lower_corner(), hi = omega.upper_corner();
    const int m = n == 1 ? 4096 : (n == 2 ? 96 : 24);
    long total = 1;
    for (int a = 0; a < n; ++a) total *= m;
    for (long k = 0; k < total; ++k) {
        Vec x(n);
        long rem = k;
        for (int a = 0; a < n; ++a) {
            x[a] = lo[a] + (static_cast<double>(rem % m) + 0.5) * (hi[a] - lo[a]) / m;
            rem /= m;
        }
        if (signed_distance(omega, x) < -1e-9 && E0.inside(x))
            fail(ErrorCode::precondition_violated, "exterior data meets the domain at " + x.str());
    }
}

double linear_limit(const std::vector<double>& s, const std::vector<double>& v) {
    const std::size_t k = s.size();
    if (k == 1) return v[0];
    const double sa = s[k - 2], sb = s[k - 1];
    return (sa * v[k - 1] - sb * v[k - 2]) / (sa - sb);
}

// Integral over the disc of the exterior mass, radially graded toward the boundary.
double continuum_perimeter(const SetSpec& E0, const Domain& omega, double s, const QuadratureConfig& cfg,
                           const MuBarOptions& opt) {
    using G = boost::math::quadrature::gauss<double, 20>;
    const double R = omega.radius;
    double acc = 0.0;
    const int nr = opt.continuum_radial, na = opt.continuum_angular;
    for (int ir = 0; ir < nr; ++ir) {
        for (std::size_t g = 0; g < G::abscissa().size(); ++g) {
            for (double sign : {-1.0, 1.0}) {
                const double x = G::abscissa()[g];
                if (x == 0.0 && sign > 0.0) continue;
                const double u = (ir + 0.5 * (1.0 + sign * x)) / nr;
                // rho = 1 - (1 - u)^2
                const double rho = 1.0 - (1.0 - u) * (1.0 - u);
                const double jac = 2.0 * (1.0 - u) * 0.5 / nr * G::weights()[g];
                double ring = 0.0;
                for (int ia = 0; ia < na; ++ia) {
                    const double phi = 2.0 * kPi * (ia + 0.5) / na;
                    const Vec y = omega.center + Vec{rho * R * std::cos(phi), rho * R * std::sin(phi)};
                    const double clear = (1.0 - rho) * R;
                    ring += exterior_mass(E0, y, clear, s, cfg).value;
                }
                acc += jac * ring * (2.0 * kPi / na) * rho * R * R;
            }
        }
    }
    return acc;
}

}  // namespace

MuBarReport mu_bar_check(const SetSpec& E0, const Domain& omega, const QuadratureConfig& cfg,
                         const MuBarOptions& opt) {
    require(E0.dim() == omega.dim(), ErrorCode::dimension_mismatch, "set and domain dimensions differ");
    require(!opt.s_grid.empty(), ErrorCode::invalid_argument, "empty s grid");
    check_disjoint(E0, omega);
    MuBarReport r;
    r.s_grid = opt.s_grid;
    r.measure = domain_measure(omega);
    for (double s : opt.s_grid) {
        const GridProblem P = build_grid_problem(omega, E0, s, opt.grid);
        r.grid_scaled.push_back(s * discrete_perimeter(P, State(P.size(), 0)));
    }
    r.grid_limit = linear_limit(r.s_grid, r.grid_scaled);
    if (opt.continuum && omega.kind == Domain::Kind::ball && omega.dim() == 2) {
        for (double s : opt.s_grid) r.continuum_scaled.push_back(s * continuum_perimeter(E0, omega, s, cfg, opt));
        r.continuum_limit = linear_limit(r.s_grid, r.continuum_scaled);
    }
    const AlphaEstimate a = alpha_limit(E0, omega.center, std::max(1.0, omega.characteristic_radius()), cfg);
    r.alpha_bar = a.extrapolated_limit;
    r.alpha_error_bar = a.error_bar;
    r.target = r.alpha_bar * r.measure;
    // Zero targets are measured against the largest possible value omega_n |Omega|.
    const double scale = r.target > 0.0 ? r.target : fracperim::omega(omega.dim()) * r.measure;
    r.rel_error = std::abs(r.grid_limit - r.target) / scale;
    r.pass = r.rel_error <= opt.tolerance;
    if (r.continuum_limit) r.pass = r.pass && std::abs(*r.continuum_limit - r.target) / scale <= opt.tolerance;
    return r;
}

}  // namespace fracperim
