#pragma once

#include <nlohmann/json.hpp>

#include "fracperim/set_spec.hpp"

namespace fracperim {

// Bounded Lipschitz reference domain: a ball, or a box with corners rounded by `rounding`.
// Rounded boxes keep erosion and dilation inside the family.
struct Domain {
    enum class Kind { ball, box };
    Kind kind = Kind::ball;
    Vec center;
    double radius = 1.0;  // ball radius
    Vec half_widths;      // box: half-widths of the core box before rounding
    double rounding = 0.0;

    static Domain ball(const Vec& center, double radius);
    static Domain box(const Vec& lo, const Vec& hi, double rounding = 0.0);

    int dim() const { return center.dim(); }
    // Inradius scale; dilation beyond twice this is rejected.
    double characteristic_radius() const;
    Vec lower_corner() const;
    Vec upper_corner() const;
    SetSpec as_set() const;
};

// Lebesgue measure.
double domain_measure(const Domain& omega);

// Signed distance to the boundary, negative inside.
double signed_distance(const Domain& omega, const Vec& x);

// {x : signed_distance < delta}; negative delta erodes.
Domain eroded_domain(const Domain& omega, double delta);

nlohmann::json to_json(const Domain& omega);
Domain domain_from_json(const nlohmann::json& j);

}  // namespace fracperim
