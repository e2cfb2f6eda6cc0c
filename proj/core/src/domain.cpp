#include "fracperim/domain.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "fracperim/error.hpp"

namespace fracperim {

namespace {

// Signed distance to an axis-aligned box centred at c with half-widths w.
double box_distance(const Vec& c, const Vec& w, const Vec& x) {
    double outside2 = 0.0, inside = -kInf;
    for (int i = 0; i < x.dim(); ++i) {
        const double q = std::abs(x[i] - c[i]) - w[i];
        if (q > 0.0) outside2 += q * q;
        inside = std::max(inside, q);
    }
    return outside2 > 0.0 ? std::sqrt(outside2) : inside;
}

}  // namespace

Domain Domain::ball(const Vec& center, double radius) {
    require(radius > 0.0, ErrorCode::invalid_argument, "domain radius must be positive");
    Domain d;
    d.kind = Kind::ball;
    d.center = center;
    d.radius = radius;
    return d;
}

Domain Domain::box(const Vec& lo, const Vec& hi, double rounding) {
    require(lo.dim() == hi.dim(), ErrorCode::dimension_mismatch, "box corners differ in dimension");
    require(rounding >= 0.0, ErrorCode::invalid_argument, "rounding must be non-negative");
    Domain d;
    d.kind = Kind::box;
    d.center = (lo + hi) * 0.5;
    d.half_widths = (hi - lo) * 0.5;
    for (int i = 0; i < lo.dim(); ++i)
        require(d.half_widths[i] > 0.0, ErrorCode::invalid_argument, "box must have positive extent");
    d.rounding = rounding;
    return d;
}

double Domain::characteristic_radius() const {
    if (kind == Kind::ball) return radius;
    double w = kInf;
    for (int i = 0; i < dim(); ++i) w = std::min(w, half_widths[i]);
    return w + rounding;
}

Vec Domain::lower_corner() const {
    if (kind == Kind::ball) return center - radius * Vec::from(std::vector<double>(dim(), 1.0));
    return center - half_widths - rounding * Vec::from(std::vector<double>(dim(), 1.0));
}

Vec Domain::upper_corner() const {
    if (kind == Kind::ball) return center + radius * Vec::from(std::vector<double>(dim(), 1.0));
    return center + half_widths + rounding * Vec::from(std::vector<double>(dim(), 1.0));
}

SetSpec Domain::as_set() const {
    if (kind == Kind::ball) return SetSpec::ball(center, radius);
    if (rounding == 0.0) return SetSpec::box(center - half_widths, center + half_widths);
    require(dim() <= 2, ErrorCode::dimension_mismatch, "rounded boxes are representable as sets only for n <= 2");
    std::vector<SetSpec> parts;
    for (int axis = 0; axis < dim(); ++axis) {
        Vec w = half_widths;
        w[axis] += rounding;
        parts.push_back(SetSpec::box(center - w, center + w));
    }
    if (dim() == 2)
        for (int sx : {-1, 1})
            for (int sy : {-1, 1})
                parts.push_back(SetSpec::ball(center + Vec{sx * half_widths[0], sy * half_widths[1]}, rounding));
    return SetSpec::unite(std::move(parts));
}

double signed_distance(const Domain& omega, const Vec& x) {
    require(x.dim() == omega.dim(), ErrorCode::dimension_mismatch, "point dimension");
    if (omega.kind == Domain::Kind::ball) return (x - omega.center).norm() - omega.radius;
    return box_distance(omega.center, omega.half_widths, x) - omega.rounding;
}

Domain eroded_domain(const Domain& omega, double delta) {
    const double r0 = omega.characteristic_radius();
    require(delta < 2.0 * r0, ErrorCode::threshold_exceeded, "dilation must stay below twice the inradius");
    require(delta > -r0, ErrorCode::threshold_exceeded, "erosion would empty the domain");
    Domain out = omega;
    if (omega.kind == Domain::Kind::ball) {
        out.radius = omega.radius + delta;
        return out;
    }
    const double r = omega.rounding + delta;
    if (r >= 0.0) {
        out.rounding = r;
    } else {
        out.rounding = 0.0;
        for (int i = 0; i < omega.dim(); ++i) out.half_widths[i] = omega.half_widths[i] + r;
    }
    return out;
}

nlohmann::json to_json(const Domain& omega) {
    if (omega.kind == Domain::Kind::ball)
        return {{"type", "ball"}, {"center", omega.center.to_vector()}, {"radius", omega.radius}};
    return {{"type", "box"},
            {"lo", (omega.center - omega.half_widths).to_vector()},
            {"hi", (omega.center + omega.half_widths).to_vector()},
            {"rounding", omega.rounding}};
}

Domain domain_from_json(const nlohmann::json& j) {
    require(j.is_object() && j.contains("type"), ErrorCode::invalid_argument, "domain needs a type");
    const std::string type = j.at("type");
    if (type == "ball")
        return Domain::ball(Vec::from(j.at("center").get<std::vector<double>>()), j.value("radius", 1.0));
    if (type == "box")
        return Domain::box(Vec::from(j.at("lo").get<std::vector<double>>()),
                           Vec::from(j.at("hi").get<std::vector<double>>()), j.value("rounding", 0.0));
    fail(ErrorCode::invalid_argument, "unknown domain type: " + type);
}

double domain_measure(const Domain& omega) {
    const int n = omega.dim();
    const double pi = 3.14159265358979323846;
    if (omega.kind == Domain::Kind::ball) {
        const double unit = n == 1 ? 2.0 : (n == 2 ? pi : 4.0 * pi / 3.0);
        return unit * std::pow(omega.radius, n);
    }
    const double r = omega.rounding;
    std::vector<double> w(n);
    for (int a = 0; a < n; ++a) w[a] = 2.0 * omega.half_widths[a];
    if (n == 1) return w[0] + 2.0 * r;
    if (n == 2) return w[0] * w[1] + 2.0 * r * (w[0] + w[1]) + pi * r * r;
    return w[0] * w[1] * w[2] + 2.0 * r * (w[0] * w[1] + w[1] * w[2] + w[0] * w[2]) +
           pi * r * r * (w[0] + w[1] + w[2]) + 4.0 * pi * r * r * r / 3.0;
}

}  // namespace fracperim
