#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracperim/set_spec.hpp"

namespace oracles {

// Unit disc at a boundary point q: an antipodal pair of rays at angle theta from the inner normal sees a chord of
// length L = 2 cos(theta), and the pair contributes 2 max(rho, L)^{-s} / s to I_s^rho.
inline double disc_truncated(double s, double rho) {
    using boost::math::quadrature::gauss_kronrod;
    constexpr double pi = std::numbers::pi;
    if (rho >= 2.0) return 2.0 * pi * std::pow(rho, -s) / s;
    auto f = [&](double th) { return 2.0 * std::pow(std::max(rho, 2.0 * std::cos(th)), -s) / s; };
    const double th0 = std::acos(rho / 2.0);
    return 2.0 * (gauss_kronrod<double, 61>::integrate(f, 0.0, th0, 15, 1e-13) +
                  gauss_kronrod<double, 61>::integrate(f, th0, pi / 2, 15, 1e-13));
}

// Limit rho -> 0 of disc_truncated.
inline double disc_pv(double s) { return std::pow(2.0, 1 - s) / s * std::beta(0.5, 0.5 * (1 - s)); }

// I_s^rho[E](q) in the plane by Monte-Carlo over antipodal ray pairs: t with density proportional to t^{-1-s} on
// [rho, inf), uniform angle; each pair averages the two signs.
inline double mc_truncated_2d(const fracperim::SetSpec& E, const fracperim::Vec& q, double s, double rho, long samples,
                              std::uint64_t seed) {
    constexpr double pi = std::numbers::pi;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double total = 2.0 * pi * std::pow(rho, -s) / s;
    double acc = 0.0;
    for (long k = 0; k < samples; ++k) {
        const double t = rho * std::pow(1.0 - u(rng), -1.0 / s);
        const double a = 2.0 * pi * u(rng);
        const fracperim::Vec d{std::cos(a), std::sin(a)};
        const double s1 = E.inside(q + d * t) ? -1.0 : 1.0, s2 = E.inside(q - d * t) ? -1.0 : 1.0;
        acc += 0.5 * (s1 + s2);
    }
    return total * acc / samples;
}

}  // namespace oracles
