#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fracperim/vec.hpp"

namespace fracperim {

// Asymptotic class of a graph u : R^{n-1} -> R, used to route closed-form limits.
struct GrowthTag {
    enum class Kind { bounded, sublinear, linear_cone, superlinear, cubic_like, custom };
    Kind kind = Kind::custom;
    double bound = 0.0;         // bounded: sup |u| <= bound
    double slope = 0.0;         // linear_cone: u = slope |x'| on the cone, 0 elsewhere
    double cone_measure = 0.0;  // linear_cone: H^{n-2} of the cone trace on S^{n-2}
    // sublinear: |u(x')| <= envelope_c (1 + |x'|^2)^{envelope_p / 2} with envelope_p < 1, when envelope_c > 0.
    double envelope_c = 0.0;
    double envelope_p = 0.0;
};

std::string to_string(GrowthTag::Kind kind);
GrowthTag::Kind growth_kind_from_string(const std::string& name);

class GraphFunction {
public:
    using Eval = std::function<double(const Vec&)>;
    using Grad = std::function<Vec(const Vec&)>;
    // Upper bound of the Hoelder seminorm of the gradient on the closed ball.
    using SeminormBound = std::function<double(const Vec& center, double radius)>;
    // Parameters t at which t -> u(a + t b) may change convexity; between them it is convex or concave.
    using LineInflections = std::function<std::vector<double>(const Vec& a, const Vec& b)>;

    struct Spec {
        int domain_dim = 1;
        Eval eval;
        Grad grad;                   // finite differences when empty
        SeminormBound seminorm;      // sampled estimate when empty
        LineInflections inflections;  // unknown when empty
        double holder_exponent = 1.0;  // 0 marks a non-C^1 graph
        GrowthTag growth;
        nlohmann::json descriptor;   // {"family": ...}; null when not serializable
    };

    GraphFunction() = default;
    explicit GraphFunction(Spec spec);

    int domain_dim() const { return spec_->domain_dim; }
    double operator()(const Vec& x) const { return spec_->eval(x); }
    Vec gradient(const Vec& x) const;
    // Row-major (n-1)x(n-1) Hessian by central differences of the gradient.
    std::vector<double> hessian(const Vec& x, double step) const;

    double holder_exponent() const { return spec_->holder_exponent; }
    const LineInflections& line_inflections() const { return spec_->inflections; }
    double c1alpha_seminorm(const Vec& center, double radius) const;
    const GrowthTag& growth() const { return spec_->growth; }
    const nlohmann::json& descriptor() const { return spec_->descriptor; }
    bool serializable() const { return !spec_->descriptor.is_null(); }
    bool valid() const { return static_cast<bool>(spec_); }

private:
    std::shared_ptr<const Spec> spec_;
};

namespace graphs {

// u(x) = sum_k coeffs[k] x^k on R.
GraphFunction polynomial(const std::vector<double>& coeffs);
GraphFunction cubic();
// u(x') = c |x'|^2.
GraphFunction paraboloid(int m, double c = 1.0);
// u(x') = amplitude * tanh(x'_1).
GraphFunction tanh_ridge(int m, double amplitude = 1.0);
// u(x') = c (1 + |x'|^2)^{p/2}; sublinear for p < 1, superlinear for p > 1.
GraphFunction power_growth(int m, double c, double p);
// u(x') = height + sign * sqrt(R^2 - |x' - center|^2), clamped outside the disc.
GraphFunction hemisphere(const Vec& center, double height, double radius, int sign);
// u = slope |x'| for x' in the cone over the azimuth arc (az_lo, az_hi), 0 elsewhere.
// For m = 1 the cone is the half-line {x > 0} and the arc arguments are ignored.
GraphFunction linear_on_cone(int m, double slope, double az_lo, double az_hi);
GraphFunction zero(int m);
// u(x') = c0 + slope . x'.
GraphFunction affine(double c0, const Vec& slope);
// base + eta * bump, bump smooth with support in B(center, width).
GraphFunction perturbed(const GraphFunction& base, double eta, const Vec& center, double width);

GraphFunction from_json(const nlohmann::json& descriptor);

}  // namespace graphs

}  // namespace fracperim
