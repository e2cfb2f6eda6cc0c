#include "fracperim/kernel_table.hpp"

#include <array>
#include <cmath>
#include <cstdlib>

#include <boost/math/quadrature/gauss.hpp>

#include "fracperim/error.hpp"

namespace fracperim {

namespace {

template <unsigned N>
struct GL {
    std::array<double, N> x, w;
    GL() {
        using G = boost::math::quadrature::gauss<double, N>;
        const auto& a = G::abscissa();
        const auto& b = G::weights();
        unsigned k = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0.0) {
                x[k] = 0.5;
                w[k++] = 0.5 * b[i];
            } else {
                x[k] = 0.5 * (1.0 + a[i]);
                w[k++] = 0.5 * b[i];
                x[k] = 0.5 * (1.0 - a[i]);
                w[k++] = 0.5 * b[i];
            }
        }
    }
};

const GL<8>& gl8() {
    static const GL<8> g;
    return g;
}
const GL<40>& gl40() {
    static const GL<40> g;
    return g;
}

// Weighted integrand over zeta in [-1,1]^2: (1-|z1|)(1-|z2|) |z + d|^{-2-s}; singular where z = -d.
struct Integrand2 {
    double dx, dy, s;
    double operator()(double z1, double z2) const {
        const double wx = 1.0 - std::abs(z1), wy = 1.0 - std::abs(z2);
        const double a = z1 + dx, b = z2 + dy;
        return wx * wy * std::pow(a * a + b * b, -0.5 * (2.0 + s));
    }
};

double tensor(const Integrand2& f, double x0, double x1, double y0, double y1) {
    const auto& g = gl8();
    double acc = 0.0;
    for (unsigned i = 0; i < 8; ++i)
        for (unsigned j = 0; j < 8; ++j)
            acc += g.w[i] * g.w[j] * f(x0 + (x1 - x0) * g.x[i], y0 + (y1 - y0) * g.x[j]);
    return acc * (x1 - x0) * (y1 - y0);
}

// Rectangle with the singular point at corner (cx, cy): Duffy split along the diagonal, graded radially.
// With r = u (ax, ay v) the kernel is u^{-2-s} times an angular factor, and each weight vanishing at the corner
// contributes one power of u; the radial powers are combined analytically so that large 1/(1-s) cannot overflow.
double duffy(double cx, double cy, double ox, double oy, double s) {
    // (ox, oy): opposite corner.
    const auto& g = gl40();
    const double p = 1.0 / (1.0 - s);
    const double ax = ox - cx, ay = oy - cy;
    const bool vx = std::abs(cx) == 1.0, vy = std::abs(cy) == 1.0;
    const int vanishing = (vx ? 1 : 0) + (vy ? 1 : 0);
    double acc = 0.0;
    for (unsigned i = 0; i < 40; ++i) {
        const double t = g.x[i];
        const double u = std::pow(t, p);
        // du * u * u^{-2-s} * u^{vanishing}.
        const double radial = p * std::exp((p * (vanishing - s) - 1.0) * std::log(t));
        for (unsigned j = 0; j < 40; ++j) {
            const double v = g.x[j];
            // First triangle r = u (ax, ay v), second r = u (ax v, ay).
            const double w1x = vx ? std::abs(ax) : 1.0 - std::abs(ax * u);
            const double w1y = vy ? std::abs(ay * v) : 1.0 - std::abs(ay * u * v);
            const double w2x = vx ? std::abs(ax * v) : 1.0 - std::abs(ax * u * v);
            const double w2y = vy ? std::abs(ay) : 1.0 - std::abs(ay * u);
            const double k1 = std::pow(ax * ax + ay * ay * v * v, -0.5 * (2.0 + s));
            const double k2 = std::pow(ax * ax * v * v + ay * ay, -0.5 * (2.0 + s));
            acc += g.w[i] * g.w[j] * radial * (w1x * w1y * k1 + w2x * w2y * k2);
        }
    }
    return acc * std::abs(ax * ay);
}

double quad_rect(const Integrand2& f, double x0, double x1, double y0, double y1, int depth) {
    const double sx = -f.dx, sy = -f.dy;
    const double tol = 1e-14;
    for (double cx : {x0, x1})
        for (double cy : {y0, y1})
            if (std::abs(cx - sx) < tol && std::abs(cy - sy) < tol)
                return duffy(cx, cy, cx == x0 ? x1 : x0, cy == y0 ? y1 : y0, f.s);
    const double ddx = std::max({x0 - sx, sx - x1, 0.0}), ddy = std::max({y0 - sy, sy - y1, 0.0});
    const double dist = std::hypot(ddx, ddy), size = std::max(x1 - x0, y1 - y0);
    if (dist < 1.5 * size && depth < 14) {
        const double xm = 0.5 * (x0 + x1), ym = 0.5 * (y0 + y1);
        return quad_rect(f, x0, xm, y0, ym, depth + 1) + quad_rect(f, xm, x1, y0, ym, depth + 1) +
               quad_rect(f, x0, xm, ym, y1, depth + 1) + quad_rect(f, xm, x1, ym, y1, depth + 1);
    }
    return tensor(f, x0, x1, y0, y1);
}

}  // namespace

double unit_kernel_1d(int d, double s) {
    require(d != 0, ErrorCode::invalid_argument, "self-interaction is infinite");
    const double a = std::abs(d);
    if (a < 3.0) {
        auto F = [s](double z) { return z > 0.0 ? std::pow(z, 1.0 - s) : 0.0; };
        return (2.0 * F(a) - F(a + 1.0) - F(a - 1.0)) / (s * (1.0 - s));
    }
    // Even binomial series of (1 + x)^p + (1 - x)^p - 2 with x = 1/a, free of cancellation.
    const double p = 1.0 - s, x2 = 1.0 / (a * a);
    double c = 1.0, xk = 1.0, sum = 0.0;
    for (int j = 0; j < 200; j += 2) {
        c *= (p - j) / (j + 1.0) * (p - j - 1.0) / (j + 2.0);
        xk *= x2;
        const double term = c * xk;
        sum += term;
        if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
    }
    return -2.0 * std::pow(a, p) * sum / (s * p);
}

double unit_kernel_2d(int dx, int dy, double s) {
    require(dx != 0 || dy != 0, ErrorCode::invalid_argument, "self-interaction is infinite");
    const Integrand2 f{static_cast<double>(std::abs(dx)), static_cast<double>(std::abs(dy)), s};
    double acc = 0.0;
    // The weight is bilinear on each quadrant of [-1,1]^2.
    for (double x0 : {-1.0, 0.0})
        for (double y0 : {-1.0, 0.0}) {
            if (std::max(std::abs(dx), std::abs(dy)) > KernelTable::near_radius)
                acc += tensor(f, x0, x0 + 1.0, y0, y0 + 1.0);
            else
                acc += quad_rect(f, x0, x0 + 1.0, y0, y0 + 1.0, 0);
        }
    return acc;
}

KernelTable::KernelTable(int n, double s, double h, int extent) : n_(n), s_(s), h_(h), extent_(extent) {
    require(n == 1 || n == 2, ErrorCode::dimension_mismatch, "kernel tables support n = 1, 2");
    require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "s must lie in (0,1)");
    require(h > 0.0 && extent >= 1, ErrorCode::invalid_argument, "kernel table needs h > 0 and extent >= 1");
    const double scale = std::pow(h, n - s);
    if (n == 1) {
        data_.assign(extent + 1, 0.0);
        for (int d = 1; d <= extent; ++d) data_[d] = scale * unit_kernel_1d(d, s);
        return;
    }
    data_.assign((extent + 1) * (extent + 1), 0.0);
    for (int dy = 0; dy <= extent; ++dy)
        for (int dx = dy; dx <= extent; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const double v = scale * unit_kernel_2d(dx, dy, s);
            data_[dy * (extent + 1) + dx] = v;
            if (dx <= extent && dy <= extent) data_[dx * (extent + 1) + dy] = v;
        }
}

}  // namespace fracperim
