#include "fracperim/graph_function.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracperim/error.hpp"

namespace fracperim {

namespace {

using json = nlohmann::json;

double spectral_bound(const std::vector<double>& h, int m) {
    double f = 0.0;
    for (int i = 0; i < m * m; ++i) f += h[i] * h[i];
    return std::sqrt(f);
}

double azimuth(const Vec& x) {
    const double a = std::atan2(x[1], x[0]);
    return a < 0 ? a + 2.0 * std::numbers::pi : a;
}

bool in_arc(double a, double lo, double hi) {
    const double two_pi = 2.0 * std::numbers::pi;
    double t = std::fmod(a - lo, two_pi);
    if (t < 0) t += two_pi;
    return t > 0.0 && t < hi - lo;
}

}  // namespace

std::string to_string(GrowthTag::Kind kind) {
    switch (kind) {
        case GrowthTag::Kind::bounded: return "bounded";
        case GrowthTag::Kind::sublinear: return "sublinear";
        case GrowthTag::Kind::linear_cone: return "linear_cone";
        case GrowthTag::Kind::superlinear: return "superlinear";
        case GrowthTag::Kind::cubic_like: return "cubic_like";
        case GrowthTag::Kind::custom: return "custom";
    }
    return "custom";
}

GrowthTag::Kind growth_kind_from_string(const std::string& name) {
    for (auto k : {GrowthTag::Kind::bounded, GrowthTag::Kind::sublinear, GrowthTag::Kind::linear_cone,
                   GrowthTag::Kind::superlinear, GrowthTag::Kind::cubic_like, GrowthTag::Kind::custom})
        if (to_string(k) == name) return k;
    fail(ErrorCode::invalid_argument, "unknown growth tag: " + name);
}

GraphFunction::GraphFunction(Spec spec) {
    require(spec.domain_dim >= 1 && spec.domain_dim <= 2, ErrorCode::dimension_mismatch,
            "graph domain dimension must be 1 or 2");
    require(static_cast<bool>(spec.eval), ErrorCode::invalid_argument, "graph needs an evaluator");
    spec_ = std::make_shared<const Spec>(std::move(spec));
}

Vec GraphFunction::gradient(const Vec& x) const {
    if (spec_->grad) return spec_->grad(x);
    Vec g(domain_dim());
    for (int i = 0; i < domain_dim(); ++i) {
        const double h = 1e-6 * (1.0 + std::abs(x[i]));
        Vec a = x, b = x;
        a[i] += h;
        b[i] -= h;
        g[i] = (spec_->eval(a) - spec_->eval(b)) / (2.0 * h);
    }
    return g;
}

std::vector<double> GraphFunction::hessian(const Vec& x, double step) const {
    const int m = domain_dim();
    std::vector<double> h(m * m);
    for (int j = 0; j < m; ++j) {
        Vec a = x, b = x;
        a[j] += step;
        b[j] -= step;
        const Vec ga = gradient(a), gb = gradient(b);
        for (int i = 0; i < m; ++i) h[i * m + j] = (ga[i] - gb[i]) / (2.0 * step);
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) h[i * m + j] = h[j * m + i] = 0.5 * (h[i * m + j] + h[j * m + i]);
    return h;
}

double GraphFunction::c1alpha_seminorm(const Vec& center, double radius) const {
    if (spec_->seminorm) return spec_->seminorm(center, radius);
    // Sampled sup of |D^2 u| across a grid covering the ball, with a safety factor.
    const int m = domain_dim();
    const int k = 9;
    double worst = 0.0;
    const double step = 1e-4 * std::max(radius, 1e-3);
    if (m == 1) {
        for (int i = 0; i < k; ++i) {
            Vec x = center;
            x[0] += radius * (2.0 * i / (k - 1) - 1.0);
            worst = std::max(worst, spectral_bound(hessian(x, step), 1));
        }
    } else {
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                Vec x = center;
                x[0] += radius * (2.0 * i / (k - 1) - 1.0);
                x[1] += radius * (2.0 * j / (k - 1) - 1.0);
                if ((x - center).norm() > radius * (1.0 + 1e-12)) continue;
                worst = std::max(worst, spectral_bound(hessian(x, step), 2));
            }
    }
    return 1.5 * worst;
}

namespace graphs {

GraphFunction polynomial(const std::vector<double>& coeffs) {
    require(!coeffs.empty(), ErrorCode::invalid_argument, "polynomial needs coefficients");
    std::vector<double> c = coeffs;
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    const int deg = static_cast<int>(c.size()) - 1;
    GraphFunction::Spec spec;
    spec.domain_dim = 1;
    spec.eval = [c](const Vec& x) {
        double acc = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * x[0] + c[k];
        return acc;
    };
    spec.grad = [c](const Vec& x) {
        double acc = 0.0;
        for (std::size_t k = c.size(); k-- > 1;) acc = acc * x[0] + static_cast<double>(k) * c[k];
        return Vec{acc};
    };
    spec.seminorm = [c](const Vec& center, double radius) {
        const double r = std::abs(center[0]) + radius;
        double acc = 0.0;
        for (std::size_t k = 2; k < c.size(); ++k)
            acc += static_cast<double>(k * (k - 1)) * std::abs(c[k]) * std::pow(r, static_cast<double>(k - 2));
        return acc;
    };
    if (deg <= 3) {
        // u'' = 2 c2 + 6 c3 x vanishes at most once.
        const double c2 = deg >= 2 ? c[2] : 0.0, c3 = deg == 3 ? c[3] : 0.0;
        spec.inflections = [c2, c3](const Vec& a, const Vec& b) {
            std::vector<double> out;
            if (c3 != 0.0 && b[0] != 0.0) out.push_back((-c2 / (3.0 * c3) - a[0]) / b[0]);
            return out;
        };
    }
    if (deg == 0) {
        spec.growth.kind = GrowthTag::Kind::bounded;
        spec.growth.bound = std::abs(c[0]);
    } else if (deg >= 3 && deg % 2 == 1) {
        spec.growth.kind = GrowthTag::Kind::cubic_like;
    } else if (deg >= 2 && deg % 2 == 0 && c.back() > 0.0) {
        spec.growth.kind = GrowthTag::Kind::superlinear;
    }
    spec.descriptor = json{{"family", "polynomial"}, {"coeffs", c}};
    return GraphFunction(std::move(spec));
}

GraphFunction cubic() { return polynomial({0.0, 0.0, 0.0, 1.0}); }

GraphFunction paraboloid(int m, double c) {
    require(c > 0.0, ErrorCode::invalid_argument, "paraboloid coefficient must be positive");
    GraphFunction::Spec spec;
    spec.domain_dim = m;
    spec.eval = [c](const Vec& x) { return c * x.norm2(); };
    spec.grad = [c](const Vec& x) { return x * (2.0 * c); };
    spec.seminorm = [c](const Vec&, double) { return 2.0 * c; };
    spec.inflections = [](const Vec&, const Vec&) { return std::vector<double>{}; };
    spec.growth.kind = GrowthTag::Kind::superlinear;
    spec.descriptor = json{{"family", "paraboloid"}, {"m", m}, {"c", c}};
    return GraphFunction(std::move(spec));
}

GraphFunction tanh_ridge(int m, double amplitude) {
    GraphFunction::Spec spec;
    spec.domain_dim = m;
    spec.eval = [amplitude](const Vec& x) { return amplitude * std::tanh(x[0]); };
    spec.grad = [amplitude, m](const Vec& x) {
        Vec g(m);
        const double c = std::cosh(x[0]);
        g[0] = amplitude / (c * c);
        return g;
    };
    // sup |d^2/dx^2 tanh| = 4 / (3 sqrt 3)
    spec.seminorm = [amplitude](const Vec&, double) { return std::abs(amplitude) * 4.0 / (3.0 * std::sqrt(3.0)); };
    spec.inflections = [](const Vec& a, const Vec& b) {
        std::vector<double> out;
        if (b[0] != 0.0) out.push_back(-a[0] / b[0]);
        return out;
    };
    spec.growth.kind = GrowthTag::Kind::bounded;
    spec.growth.bound = std::abs(amplitude);
    spec.descriptor = json{{"family", "tanh_ridge"}, {"m", m}, {"amplitude", amplitude}};
    return GraphFunction(std::move(spec));
}

GraphFunction power_growth(int m, double c, double p) {
    require(p > 0.0 && p <= 2.0 && p != 1.0, ErrorCode::invalid_argument, "power_growth needs p in (0,1) or (1,2]");
    GraphFunction::Spec spec;
    spec.domain_dim = m;
    spec.eval = [c, p](const Vec& x) { return c * std::pow(1.0 + x.norm2(), 0.5 * p); };
    spec.grad = [c, p](const Vec& x) { return x * (c * p * std::pow(1.0 + x.norm2(), 0.5 * p - 1.0)); };
    spec.seminorm = [c, p](const Vec&, double) { return std::abs(c) * p * std::max(1.0, std::abs(p - 1.0)); };
    // Q(t) = 1 + |a + t b|^2: (Q^{p/2})'' has the sign of (p/2 - 1) Q'^2 + Q Q'', a quadratic in t.
    spec.inflections = [p](const Vec& a, const Vec& b) {
        const double bb = b.norm2(), ab = a.dot(b), aa = a.norm2();
        std::vector<double> out;
        if (bb == 0.0) return out;
        const double k = 0.5 * p - 1.0;
        // Q' = 2 bb t + 2 ab, Q'' = 2 bb.
        const double A = 4.0 * k * bb * bb + 2.0 * bb * bb;
        const double B = 8.0 * k * bb * ab + 4.0 * bb * ab;
        const double C = 4.0 * k * ab * ab + 2.0 * bb * (1.0 + aa);
        if (A == 0.0) {
            if (B != 0.0) out.push_back(-C / B);
            return out;
        }
        const double disc = B * B - 4.0 * A * C;
        if (disc < 0.0) return out;
        const double r = std::sqrt(disc);
        out.push_back((-B - r) / (2.0 * A));
        out.push_back((-B + r) / (2.0 * A));
        return out;
    };
    spec.growth.kind = p < 1.0 ? GrowthTag::Kind::sublinear : GrowthTag::Kind::superlinear;
    if (p < 1.0) {
        spec.growth.envelope_c = std::abs(c);
        spec.growth.envelope_p = p;
    }
    if (c < 0.0 && p > 1.0) spec.growth.kind = GrowthTag::Kind::custom;
    spec.descriptor = json{{"family", "power_growth"}, {"m", m}, {"c", c}, {"p", p}};
    return GraphFunction(std::move(spec));
}

GraphFunction hemisphere(const Vec& center, double height, double radius, int sign) {
    require(radius > 0.0, ErrorCode::invalid_argument, "hemisphere radius must be positive");
    require(sign == 1 || sign == -1, ErrorCode::invalid_argument, "hemisphere sign must be +-1");
    GraphFunction::Spec spec;
    spec.domain_dim = center.dim();
    spec.eval = [=](const Vec& x) {
        const double q = std::max(0.0, radius * radius - (x - center).norm2());
        return height + sign * std::sqrt(q);
    };
    spec.grad = [=](const Vec& x) {
        const Vec d = x - center;
        const double q = std::max(1e-300, radius * radius - d.norm2());
        return d * (-sign / std::sqrt(q));
    };
    spec.seminorm = [=](const Vec& c, double r) {
        const double rho = (c - center).norm() + r;
        require(rho < radius, ErrorCode::precondition_violated, "hemisphere chart ball leaves the disc");
        return radius * radius / std::pow(radius * radius - rho * rho, 1.5);
    };
    spec.growth.kind = GrowthTag::Kind::custom;
    spec.descriptor = json{{"family", "hemisphere"}, {"center", center.to_vector()},
                           {"height", height}, {"radius", radius}, {"sign", sign}};
    return GraphFunction(std::move(spec));
}

GraphFunction linear_on_cone(int m, double slope, double az_lo, double az_hi) {
    require(slope >= 0.0, ErrorCode::invalid_argument, "cone slope must be non-negative");
    GraphFunction::Spec spec;
    spec.domain_dim = m;
    if (m == 1) {
        spec.eval = [slope](const Vec& x) { return x[0] > 0.0 ? slope * x[0] : 0.0; };
        spec.grad = [slope](const Vec& x) { return Vec{x[0] > 0.0 ? slope : 0.0}; };
        spec.growth.cone_measure = 1.0;
    } else {
        require(az_hi > az_lo && az_hi - az_lo < 2.0 * std::numbers::pi, ErrorCode::invalid_argument,
                "azimuth arc must be a proper arc");
        spec.eval = [=](const Vec& x) { return in_arc(azimuth(x), az_lo, az_hi) ? slope * x.norm() : 0.0; };
        spec.grad = [=](const Vec& x) {
            const double r = x.norm();
            if (r == 0.0 || !in_arc(azimuth(x), az_lo, az_hi)) return Vec(2);
            return x * (slope / r);
        };
        spec.growth.cone_measure = az_hi - az_lo;
    }
    spec.holder_exponent = 0.0;
    spec.growth.kind = GrowthTag::Kind::linear_cone;
    spec.growth.slope = slope;
    spec.descriptor = json{{"family", "linear_on_cone"}, {"m", m}, {"slope", slope},
                           {"az_lo", az_lo}, {"az_hi", az_hi}};
    return GraphFunction(std::move(spec));
}

GraphFunction zero(int m) {
    GraphFunction::Spec spec;
    spec.domain_dim = m;
    spec.eval = [](const Vec&) { return 0.0; };
    spec.grad = [m](const Vec&) { return Vec(m); };
    spec.seminorm = [](const Vec&, double) { return 0.0; };
    spec.inflections = [](const Vec&, const Vec&) { return std::vector<double>{}; };
    spec.growth.kind = GrowthTag::Kind::bounded;
    spec.descriptor = json{{"family", "zero"}, {"m", m}};
    return GraphFunction(std::move(spec));
}

GraphFunction perturbed(const GraphFunction& base, double eta, const Vec& center, double width) {
    require(width > 0.0, ErrorCode::invalid_argument, "bump width must be positive");
    require(center.dim() == base.domain_dim(), ErrorCode::dimension_mismatch, "bump center dimension");
    auto bump = [=](const Vec& x) {
        const double q = (x - center).norm2() / (width * width);
        return q < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - q)) : 0.0;
    };
    // Sup of |D^2 bump| for unit width, from the radial profile.
    double k2 = 0.0;
    for (int i = 1; i < 2000; ++i) {
        const double r = i / 2000.0, h = 1e-5;
        auto f = [](double t) { return t * t < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t * t)) : 0.0; };
        const double d2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
        const double d1 = (f(r + h) - f(r - h)) / (2.0 * h);
        k2 = std::max({k2, std::abs(d2), std::abs(d1 / r)});
    }
    GraphFunction::Spec spec;
    spec.domain_dim = base.domain_dim();
    spec.eval = [=](const Vec& x) { return base(x) + eta * bump(x); };
    spec.grad = [=](const Vec& x) {
        Vec g = base.gradient(x);
        const Vec d = x - center;
        const double q = d.norm2() / (width * width);
        if (q < 1.0) g += d * (eta * bump(x) * (-2.0 / (width * width * (1.0 - q) * (1.0 - q))));
        return g;
    };
    spec.seminorm = [=](const Vec& c, double r) {
        return base.c1alpha_seminorm(c, r) + 1.25 * std::abs(eta) * k2 / (width * width);
    };
    spec.holder_exponent = base.holder_exponent();
    spec.growth = base.growth();
    if (base.serializable())
        spec.descriptor = json{{"family", "perturbed"}, {"base", base.descriptor()}, {"eta", eta},
                               {"center", center.to_vector()}, {"width", width}};
    return GraphFunction(std::move(spec));
}

GraphFunction affine(double c0, const Vec& slope) {
    GraphFunction::Spec spec;
    spec.domain_dim = slope.dim();
    spec.eval = [c0, slope](const Vec& x) { return c0 + slope.dot(x); };
    spec.grad = [slope](const Vec&) { return slope; };
    spec.seminorm = [](const Vec&, double) { return 0.0; };
    spec.inflections = [](const Vec&, const Vec&) { return std::vector<double>{}; };
    spec.growth.kind = slope.norm2() == 0.0 ? GrowthTag::Kind::bounded : GrowthTag::Kind::custom;
    spec.growth.bound = std::abs(c0);
    spec.descriptor = json{{"family", "affine"}, {"c0", c0}, {"slope", slope.to_vector()}};
    return GraphFunction(std::move(spec));
}

GraphFunction from_json(const json& d) {
    require(d.is_object() && d.contains("family"), ErrorCode::invalid_argument, "graph descriptor needs a family");
    const std::string family = d.at("family");
    if (family == "polynomial") return polynomial(d.at("coeffs").get<std::vector<double>>());
    if (family == "paraboloid") return paraboloid(d.at("m"), d.value("c", 1.0));
    if (family == "tanh_ridge") return tanh_ridge(d.at("m"), d.value("amplitude", 1.0));
    if (family == "power_growth") return power_growth(d.at("m"), d.at("c"), d.at("p"));
    if (family == "hemisphere")
        return hemisphere(Vec::from(d.at("center").get<std::vector<double>>()), d.at("height"), d.at("radius"),
                          d.at("sign"));
    if (family == "linear_on_cone")
        return linear_on_cone(d.at("m"), d.at("slope"), d.value("az_lo", 0.0), d.value("az_hi", 0.0));
    if (family == "zero") return zero(d.at("m"));
    if (family == "affine") return affine(d.at("c0"), Vec::from(d.at("slope").get<std::vector<double>>()));
    if (family == "perturbed")
        return perturbed(from_json(d.at("base")), d.at("eta"), Vec::from(d.at("center").get<std::vector<double>>()),
                         d.at("width"));
    fail(ErrorCode::invalid_argument, "unknown graph family: " + family);
}

}  // namespace graphs

}  // namespace fracperim
