#include "fracperim/canonical.hpp"

#include <cmath>
#include <numbers>

#include "fracperim/error.hpp"

namespace fracperim {

namespace {

constexpr double kPi = std::numbers::pi;

double param(const SetParams& p, const std::string& key, double fallback) {
    auto it = p.find(key);
    return it == p.end() ? fallback : it->second;
}

int dim_param(const SetParams& p, int fallback) {
    const double n = param(p, "n", fallback);
    require(n == std::floor(n) && n >= 1 && n <= 3, ErrorCode::dimension_mismatch, "n must be 1, 2 or 3");
    return static_cast<int>(n);
}

Vec zero_vec(int n) { return Vec(n); }

}  // namespace

std::vector<std::string> canonical_names() {
    return {"halfspace",  "quadrant", "cone",          "ball",        "annulus",          "cubic_supergraph",
            "parabola",   "tanh_supergraph", "sublinear_supergraph", "candy", "alphasigma", "alphasigma_cone",
            "gamma_k_eps", "dimpled_quadrant", "empty",  "full"};
}

SetSpec canonical_set(const std::string& name, const SetParams& p) {
    if (name == "halfspace") {
        const int n = dim_param(p, 2);
        return SetSpec::half_space(Vec::unit(n, n - 1), param(p, "offset", 0.0));
    }
    if (name == "quadrant") {
        return SetSpec::cap_cone(Vec{0.0, 0.0}, Vec{1.0, 1.0}, kPi / 4);
    }
    if (name == "cone") {
        const int n = dim_param(p, 2);
        return SetSpec::cap_cone(zero_vec(n), Vec::unit(n, n - 1), param(p, "half_angle", kPi / 4));
    }
    if (name == "ball") {
        const int n = dim_param(p, 2);
        return SetSpec::ball(zero_vec(n), param(p, "radius", 1.0));
    }
    if (name == "annulus") {
        const double r_in = param(p, "r_in", 1.0), r_out = param(p, "r_out", 2.0);
        require(r_in > 0.0 && r_out > r_in, ErrorCode::invalid_argument, "annulus needs 0 < r_in < r_out");
        return SetSpec::ball(zero_vec(2), r_out).minus(SetSpec::ball(zero_vec(2), r_in));
    }
    if (name == "cubic_supergraph") return SetSpec::supergraph(graphs::cubic(), 1);
    if (name == "parabola") {
        const int n = dim_param(p, 2);
        require(n >= 2, ErrorCode::dimension_mismatch, "parabola needs n >= 2");
        return SetSpec::supergraph(graphs::paraboloid(n - 1, param(p, "c", 1.0)), n - 1);
    }
    if (name == "tanh_supergraph") {
        const int n = dim_param(p, 2);
        require(n >= 2, ErrorCode::dimension_mismatch, "tanh supergraph needs n >= 2");
        return SetSpec::supergraph(graphs::tanh_ridge(n - 1, param(p, "amplitude", 1.0)), n - 1);
    }
    if (name == "sublinear_supergraph") {
        const int n = dim_param(p, 2);
        require(n >= 2, ErrorCode::dimension_mismatch, "sublinear supergraph needs n >= 2");
        const double pw = param(p, "p", 0.5);
        require(pw > 0.0 && pw < 1.0, ErrorCode::invalid_argument, "sublinear exponent must be in (0,1)");
        return SetSpec::supergraph(graphs::power_growth(n - 1, param(p, "c", 1.0), pw), n - 1);
    }
    if (name == "candy") {
        const double c = param(p, "c", 0.5), pw = param(p, "p", 0.5);
        require(c > 0.0 && pw > 0.0 && pw < 1.0, ErrorCode::invalid_argument, "candy needs c > 0, p in (0,1)");
        const SetSpec above_lower = SetSpec::supergraph(graphs::power_growth(1, -c, pw), 1);
        const SetSpec above_upper = SetSpec::supergraph(graphs::power_growth(1, c, pw), 1);
        return above_lower.minus(above_upper);
    }
    if (name == "alphasigma") {
        const int n = dim_param(p, 3);
        require(n >= 2, ErrorCode::dimension_mismatch, "alphasigma needs n >= 2");
        const double k = param(p, "k", 1.0), eb = param(p, "eps_bar", 0.5);
        require(k > 0.0 && eb > 0.0 && eb < kPi, ErrorCode::invalid_argument, "alphasigma needs k > 0, 0 < eps_bar < pi");
        return SetSpec::supergraph(graphs::linear_on_cone(n - 1, k, kPi / 2 - eb, kPi / 2 + eb), n - 1);
    }
    if (name == "alphasigma_cone") {
        const double k = param(p, "k", 1.0), eb = param(p, "eps_bar", 0.5);
        require(k > 0.0 && eb > 0.0 && eb < kPi, ErrorCode::invalid_argument, "alphasigma needs k > 0, 0 < eps_bar < pi");
        const SetSpec wedge = SetSpec::angle_box_cone(zero_vec(3), kPi / 2 - eb, kPi / 2 + eb, 0.0, std::atan(k));
        return SetSpec::half_space(Vec::unit(3, 2), 0.0).minus(wedge);
    }
    if (name == "gamma_k_eps") {
        const int n = dim_param(p, 2);
        const double kd = param(p, "k", 2.0), eps = param(p, "eps", 0.05);
        require(kd == std::floor(kd) && kd >= 1 && kd <= 12, ErrorCode::invalid_argument, "k must be an integer in [1,12]");
        const int k = static_cast<int>(kd);
        const double step = std::ldexp(1.0, -k);
        require(eps > 0.0 && eps < 0.5 * step, ErrorCode::invalid_argument, "eps must satisfy 0 < eps < 2^{-k-1}");
        std::vector<SetSpec> parts{SetSpec::ball(zero_vec(n), eps)};
        for (int i = 1; i < (1 << k); ++i) {
            const double r = i * step;
            parts.push_back(SetSpec::ball(zero_vec(n), r + eps).minus(SetSpec::ball(zero_vec(n), r - eps)));
        }
        return SetSpec::unite(std::move(parts));
    }
    if (name == "dimpled_quadrant") {
        const double x = param(p, "x", 2.0), delta = param(p, "delta", 0.5);
        require(delta > 0.0 && x > delta, ErrorCode::invalid_argument, "dimple must sit on the positive x-axis edge");
        return canonical_set("quadrant").minus(SetSpec::ball(Vec{x, 0.0}, delta));
    }
    if (name == "empty") return SetSpec::empty(dim_param(p, 2));
    if (name == "full") return SetSpec::full(dim_param(p, 2));
    fail(ErrorCode::invalid_argument, "unknown canonical set: " + name);
}

}  // namespace fracperim
