#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "fracperim/graph_function.hpp"
#include "fracperim/intervals.hpp"
#include "fracperim/vec.hpp"

namespace fracperim {

enum class Membership { inside, outside, boundary };

// Boundary tolerance at x.
inline double eps_geo(const Vec& x) { return 1e-12 * (1.0 + x.norm()); }

// Controls root isolation along rays through graph-defined sets.
struct RayOptions {
    double growth = 1.03;        // geometric sampling ratio
    double t_first_rel = 1e-10;  // first sample, relative to 1 + |origin|
    double t_max_rel = 1e16;     // last sample, relative to 1 + |origin|
};

// Axis-aligned occupancy grid; cell k covers origin + h * [idx, idx + 1).
struct RasterGrid {
    Vec origin;
    double cell = 1.0;
    std::vector<int> dims;
    std::vector<std::uint8_t> occupied;  // row-major, last axis fastest

    int dim() const { return origin.dim(); }
    std::size_t size() const;
    std::optional<std::size_t> locate(const Vec& x) const;
};

class SetSpec {
public:
    struct HalfSpace { Vec normal; double offset; };  // {x : normal . x > offset}, |normal| = 1
    struct Ball { Vec center; double radius; };
    struct Box { Vec lo, hi; };
    // Open cone with apex, unit axis and half-angle in (0, pi).
    struct CapCone { Vec apex; Vec axis; double half_angle; };
    // Cone over the spherical rectangle azimuth (az_lo, az_hi) x elevation (el_lo, el_hi).
    // In R^2 only the azimuth arc is used.
    struct AngleBoxCone { Vec apex; double az_lo, az_hi, el_lo, el_hi; };
    // {x : x[axis] > u(x without axis)}.
    struct Supergraph { GraphFunction graph; int axis; };
    struct Raster { std::shared_ptr<const RasterGrid> grid; };
    struct Empty {};
    struct Full {};
    struct Complement;
    struct Union;
    struct Intersection;
    struct Translate;
    struct Rotate;
    struct Scale;

    struct Node;

    SetSpec() = default;

    static SetSpec half_space(const Vec& normal, double offset);
    static SetSpec ball(const Vec& center, double radius);
    static SetSpec box(const Vec& lo, const Vec& hi);
    static SetSpec cap_cone(const Vec& apex, const Vec& axis, double half_angle);
    static SetSpec angle_box_cone(const Vec& apex, double az_lo, double az_hi, double el_lo = 0.0,
                                  double el_hi = 0.0);
    static SetSpec supergraph(const GraphFunction& graph, int axis);
    static SetSpec raster(RasterGrid grid);
    static SetSpec empty(int n);
    static SetSpec full(int n);

    SetSpec complement() const;
    static SetSpec unite(std::vector<SetSpec> parts);
    static SetSpec intersect(std::vector<SetSpec> parts);
    SetSpec minus(const SetSpec& other) const;
    SetSpec translated(const Vec& shift) const;
    SetSpec rotated(const Mat& rotation) const;
    SetSpec scaled(double factor) const;

    int dim() const;
    bool valid() const { return static_cast<bool>(node_); }
    const Node& node() const { return *node_; }

    Membership contains(const Vec& x) const;
    bool inside(const Vec& x) const { return contains(x) == Membership::inside; }

    // Parameters t >= t_lo with origin + t * dir inside the set; `dir` need not be unit.
    IntervalSet ray(const Vec& origin, const Vec& dir, double t_lo = 0.0, const RayOptions& opt = {}) const;

    // Outward unit normal when x lies on a smooth part of a primitive boundary.
    std::optional<Vec> boundary_normal(const Vec& x) const;

    // n = 2: polar angles of directions along which the boundary runs off to infinity (cone and half-plane edges,
    // graph axes). Rays near these directions meet the boundary far away. Empty for other n.
    std::vector<double> asymptotic_angles() const;

    // Radius of a ball about the origin containing the set, when bounded.
    std::optional<double> bounding_radius() const;

private:
    explicit SetSpec(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct SetSpec::Complement { SetSpec child; };
struct SetSpec::Union { std::vector<SetSpec> children; };
struct SetSpec::Intersection { std::vector<SetSpec> children; };
struct SetSpec::Translate { SetSpec child; Vec shift; };
struct SetSpec::Rotate { SetSpec child; Mat rotation; };  // orthogonal
struct SetSpec::Scale { SetSpec child; double factor; };  // factor > 0

struct SetSpec::Node {
    int dim;
    std::variant<HalfSpace, Ball, Box, CapCone, AngleBoxCone, Supergraph, Raster, Empty, Full, Complement, Union,
                 Intersection, Translate, Rotate, Scale>
        v;
};

}  // namespace fracperim
