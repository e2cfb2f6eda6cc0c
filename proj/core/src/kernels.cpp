#include "fracperim/kernels.hpp"

#include <array>
#include <cmath>

#include <boost/math/special_functions/beta.hpp>

#include "fracperim/error.hpp"

namespace fracperim {

namespace {

void check_s(double s) { require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "s must lie in (0,1)"); }

// 10-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGLx{0.1488743389816312, 0.4333953941292472, 0.6794095682990244,
                                     0.8650633666889845, 0.9739065285171717};
constexpr std::array<double, 5> kGLw{0.2955242247147529, 0.2692667193099963, 0.2190863625159820,
                                     0.1494513491505806, 0.0666713443086881};

}  // namespace

double g_kernel(int n, double s, double t) {
    check_s(s);
    require(n >= 1, ErrorCode::invalid_argument, "n must be >= 1");
    return std::pow(1.0 + t * t, -0.5 * (n + s));
}

double G_power(double p, double t) {
    require(p > 1.0, ErrorCode::invalid_argument, "G needs exponent p > 1");
    if (t == 0.0) return 0.0;
    const double b = 0.5 * (p - 1.0);
    if (std::isinf(t)) return std::copysign(0.5 * boost::math::beta(0.5, b), t);
    const double t2 = t * t;
    // x = t^2/(1+t^2) and 1-x = 1/(1+t^2); use the complementary form when x is close to 1.
    double val;
    if (t2 < 1.0)
        val = 0.5 * boost::math::beta(0.5, b, t2 / (1.0 + t2));
    else
        val = 0.5 * (boost::math::beta(0.5, b) - boost::math::beta(b, 0.5, 1.0 / (1.0 + t2)));
    return std::copysign(val, t);
}

double G_kernel(int n, double s, double t) {
    check_s(s);
    require(n >= 1, ErrorCode::invalid_argument, "n must be >= 1");
    return G_power(n + s, t);
}

double G_kernel_limit(int n, double s) { return G_kernel(n, s, INFINITY); }

double G_difference(int n, double s, double a, double b) {
    if (std::abs(a - b) > 0.25 * (1.0 + std::min(std::abs(a), std::abs(b))) || std::isinf(a) || std::isinf(b))
        return G_kernel(n, s, a) - G_kernel(n, s, b);
    const double mid = 0.5 * (a + b), half = 0.5 * (a - b), p = -0.5 * (n + s);
    double acc = 0.0;
    for (std::size_t i = 0; i < kGLx.size(); ++i) {
        const double x1 = mid + half * kGLx[i], x2 = mid - half * kGLx[i];
        acc += kGLw[i] * (std::pow(1.0 + x1 * x1, p) + std::pow(1.0 + x2 * x2, p));
    }
    return acc * half;
}

}  // namespace fracperim
