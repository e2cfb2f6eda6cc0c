#include "fracperim/set_spec.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fracperim/error.hpp"

namespace fracperim {

namespace {

constexpr double kPi = std::numbers::pi;

// Vectors already unit to rounding are kept bit-exact so serialized sets round-trip.
Vec unit_direction(const Vec& v) { return std::abs(v.norm2() - 1.0) <= 4e-16 ? v : v.normalized(); }

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Membership classify(double margin, double eps) {
    if (std::abs(margin) <= eps) return Membership::boundary;
    return margin > 0.0 ? Membership::inside : Membership::outside;
}

double arc_margin(double a, double lo, double hi) {
    // Signed angular distance of `a` into the arc (lo, hi), modulo 2 pi.
    double t = std::fmod(a - lo, 2.0 * kPi);
    if (t < 0) t += 2.0 * kPi;
    const double width = hi - lo;
    if (t < width) return std::min(t, width - t);
    return -std::min(t - width, 2.0 * kPi - t);
}

struct ConeAngles {
    double az_margin;
    double el_margin;
    double planar;  // |w'|
};

ConeAngles cone_angles(const SetSpec::AngleBoxCone& c, const Vec& w) {
    ConeAngles out{};
    const double az = std::atan2(w[1], w[0]);
    out.az_margin = arc_margin(az, c.az_lo, c.az_hi);
    if (w.dim() == 3) {
        out.planar = std::hypot(w[0], w[1]);
        const double el = std::atan2(w[2], out.planar);
        out.el_margin = std::min(el - c.el_lo, c.el_hi - el);
    } else {
        out.planar = w.norm();
        out.el_margin = kPi;
    }
    return out;
}

}  // namespace

std::size_t RasterGrid::size() const {
    std::size_t total = 1;
    for (int d : dims) total *= static_cast<std::size_t>(d);
    return total;
}

std::optional<std::size_t> RasterGrid::locate(const Vec& x) const {
    std::size_t index = 0;
    for (int i = 0; i < dim(); ++i) {
        const double u = (x[i] - origin[i]) / cell;
        if (!(u >= 0.0) || u >= dims[i]) return std::nullopt;
        index = index * dims[i] + static_cast<std::size_t>(u);
    }
    return index;
}

SetSpec SetSpec::half_space(const Vec& normal, double offset) {
    return SetSpec(std::make_shared<Node>(Node{normal.dim(), HalfSpace{unit_direction(normal), offset}}));
}

SetSpec SetSpec::ball(const Vec& center, double radius) {
    require(radius > 0.0, ErrorCode::invalid_argument, "ball radius must be positive");
    return SetSpec(std::make_shared<Node>(Node{center.dim(), Ball{center, radius}}));
}

SetSpec SetSpec::box(const Vec& lo, const Vec& hi) {
    require(lo.dim() == hi.dim(), ErrorCode::dimension_mismatch, "box corners differ in dimension");
    for (int i = 0; i < lo.dim(); ++i)
        require(lo[i] < hi[i], ErrorCode::invalid_argument, "box must have positive extent");
    return SetSpec(std::make_shared<Node>(Node{lo.dim(), Box{lo, hi}}));
}

SetSpec SetSpec::cap_cone(const Vec& apex, const Vec& axis, double half_angle) {
    require(apex.dim() == axis.dim(), ErrorCode::dimension_mismatch, "cone apex and axis differ in dimension");
    require(half_angle > 0.0 && half_angle < kPi, ErrorCode::invalid_argument, "cone half-angle must be in (0, pi)");
    return SetSpec(std::make_shared<Node>(Node{apex.dim(), CapCone{apex, unit_direction(axis), half_angle}}));
}

SetSpec SetSpec::angle_box_cone(const Vec& apex, double az_lo, double az_hi, double el_lo, double el_hi) {
    require(apex.dim() == 2 || apex.dim() == 3, ErrorCode::dimension_mismatch, "angle-box cone needs n = 2 or 3");
    require(az_hi > az_lo && az_hi - az_lo <= 2.0 * kPi, ErrorCode::invalid_argument, "bad azimuth arc");
    if (apex.dim() == 3)
        require(el_lo < el_hi && el_lo >= -kPi / 2 && el_hi <= kPi / 2, ErrorCode::invalid_argument,
                "bad elevation band");
    return SetSpec(std::make_shared<Node>(Node{apex.dim(), AngleBoxCone{apex, az_lo, az_hi, el_lo, el_hi}}));
}

SetSpec SetSpec::supergraph(const GraphFunction& graph, int axis) {
    const int n = graph.domain_dim() + 1;
    require(axis >= 0 && axis < n, ErrorCode::invalid_argument, "supergraph axis out of range");
    return SetSpec(std::make_shared<Node>(Node{n, Supergraph{graph, axis}}));
}

SetSpec SetSpec::raster(RasterGrid grid) {
    require(static_cast<int>(grid.dims.size()) == grid.dim(), ErrorCode::dimension_mismatch, "raster dims");
    require(grid.occupied.size() == grid.size(), ErrorCode::invalid_argument, "raster occupancy size");
    require(grid.cell > 0.0, ErrorCode::invalid_argument, "raster cell must be positive");
    const int n = grid.dim();
    return SetSpec(std::make_shared<Node>(Node{n, Raster{std::make_shared<const RasterGrid>(std::move(grid))}}));
}

SetSpec SetSpec::empty(int n) { return SetSpec(std::make_shared<Node>(Node{n, Empty{}})); }
SetSpec SetSpec::full(int n) { return SetSpec(std::make_shared<Node>(Node{n, Full{}})); }

SetSpec SetSpec::complement() const { return SetSpec(std::make_shared<Node>(Node{dim(), Complement{*this}})); }

SetSpec SetSpec::unite(std::vector<SetSpec> parts) {
    require(!parts.empty(), ErrorCode::invalid_argument, "union of nothing");
    const int n = parts.front().dim();
    for (const auto& p : parts) require(p.dim() == n, ErrorCode::dimension_mismatch, "union dimension mismatch");
    return SetSpec(std::make_shared<Node>(Node{n, Union{std::move(parts)}}));
}

SetSpec SetSpec::intersect(std::vector<SetSpec> parts) {
    require(!parts.empty(), ErrorCode::invalid_argument, "intersection of nothing");
    const int n = parts.front().dim();
    for (const auto& p : parts)
        require(p.dim() == n, ErrorCode::dimension_mismatch, "intersection dimension mismatch");
    return SetSpec(std::make_shared<Node>(Node{n, Intersection{std::move(parts)}}));
}

SetSpec SetSpec::minus(const SetSpec& other) const { return intersect({*this, other.complement()}); }

SetSpec SetSpec::translated(const Vec& shift) const {
    require(shift.dim() == dim(), ErrorCode::dimension_mismatch, "translation dimension");
    return SetSpec(std::make_shared<Node>(Node{dim(), Translate{*this, shift}}));
}

SetSpec SetSpec::rotated(const Mat& rotation) const {
    require(rotation.dim() == dim(), ErrorCode::dimension_mismatch, "rotation dimension");
    require(rotation.orthogonality_defect() < 1e-10, ErrorCode::invalid_argument, "rotation must be orthogonal");
    return SetSpec(std::make_shared<Node>(Node{dim(), Rotate{*this, rotation}}));
}

SetSpec SetSpec::scaled(double factor) const {
    require(factor > 0.0, ErrorCode::invalid_argument, "scale factor must be positive");
    return SetSpec(std::make_shared<Node>(Node{dim(), Scale{*this, factor}}));
}

int SetSpec::dim() const {
    require(valid(), ErrorCode::invalid_argument, "empty set specification handle");
    return node_->dim;
}

Membership SetSpec::contains(const Vec& x) const {
    require(x.dim() == dim(), ErrorCode::dimension_mismatch, "point dimension " + std::to_string(x.dim()) +
                                                                  " vs set dimension " + std::to_string(dim()));
    const double eps = eps_geo(x);
    return std::visit(
        overloaded{
            [&](const HalfSpace& h) { return classify(h.normal.dot(x) - h.offset, eps); },
            [&](const Ball& b) { return classify(b.radius - (x - b.center).norm(), eps); },
            [&](const Box& b) {
                double m = kInf;
                for (int i = 0; i < x.dim(); ++i) m = std::min({m, x[i] - b.lo[i], b.hi[i] - x[i]});
                return classify(m, eps);
            },
            [&](const CapCone& c) {
                const Vec w = x - c.apex;
                const double r = w.norm();
                if (r <= eps) return Membership::boundary;
                const double theta = std::acos(std::clamp(w.dot(c.axis) / r, -1.0, 1.0));
                const double gap = c.half_angle - theta;
                return classify(r * std::sin(std::clamp(gap, -kPi / 2, kPi / 2)), eps);
            },
            [&](const AngleBoxCone& c) {
                const Vec w = x - c.apex;
                if (w.norm() <= eps) return Membership::boundary;
                const ConeAngles a = cone_angles(c, w);
                const double m = std::min(a.planar * std::sin(std::clamp(a.az_margin, -kPi / 2, kPi / 2)),
                                          w.norm() * std::sin(std::clamp(a.el_margin, -kPi / 2, kPi / 2)));
                return classify(m, eps);
            },
            [&](const Supergraph& g) { return classify(x[g.axis] - g.graph(x.drop(g.axis)), eps); },
            [&](const Raster& r) {
                const auto idx = r.grid->locate(x);
                return (idx && r.grid->occupied[*idx]) ? Membership::inside : Membership::outside;
            },
            [&](const Empty&) { return Membership::outside; },
            [&](const Full&) { return Membership::inside; },
            [&](const Complement& c) {
                const Membership m = c.child.contains(x);
                if (m == Membership::boundary) return m;
                return m == Membership::inside ? Membership::outside : Membership::inside;
            },
            [&](const Union& u) {
                bool on_boundary = false;
                for (const auto& ch : u.children) {
                    const Membership m = ch.contains(x);
                    if (m == Membership::inside) return Membership::inside;
                    on_boundary |= (m == Membership::boundary);
                }
                return on_boundary ? Membership::boundary : Membership::outside;
            },
            [&](const Intersection& in) {
                bool on_boundary = false;
                for (const auto& ch : in.children) {
                    const Membership m = ch.contains(x);
                    if (m == Membership::outside) return Membership::outside;
                    on_boundary |= (m == Membership::boundary);
                }
                return on_boundary ? Membership::boundary : Membership::inside;
            },
            [&](const Translate& t) { return t.child.contains(x - t.shift); },
            [&](const Rotate& r) { return r.child.contains(r.rotation.transpose_times(x)); },
            [&](const Scale& s) { return s.child.contains(x / s.factor); },
        },
        node_->v);
}

std::optional<Vec> SetSpec::boundary_normal(const Vec& x) const {
    require(x.dim() == dim(), ErrorCode::dimension_mismatch, "point dimension");
    const double eps = eps_geo(x);
    using Opt = std::optional<Vec>;
    return std::visit(
        overloaded{
            [&](const HalfSpace& h) -> Opt {
                if (std::abs(h.normal.dot(x) - h.offset) > eps) return std::nullopt;
                return -h.normal;
            },
            [&](const Ball& b) -> Opt {
                const Vec w = x - b.center;
                if (std::abs(w.norm() - b.radius) > eps) return std::nullopt;
                return w.normalized();
            },
            [&](const Box& b) -> Opt {
                Opt found;
                int hits = 0;
                for (int i = 0; i < x.dim(); ++i) {
                    if (std::abs(x[i] - b.lo[i]) <= eps) {
                        found = -Vec::unit(x.dim(), i);
                        ++hits;
                    }
                    if (std::abs(x[i] - b.hi[i]) <= eps) {
                        found = Vec::unit(x.dim(), i);
                        ++hits;
                    }
                }
                if (hits != 1 || contains(x) != Membership::boundary) return std::nullopt;
                return found;
            },
            [&](const CapCone& c) -> Opt {
                if (contains(x) != Membership::boundary) return std::nullopt;
                const Vec w = x - c.apex;
                if (w.norm() <= 1e3 * eps) return std::nullopt;
                const Vec r = w.normalized();
                if (x.dim() == 1) return std::nullopt;
                return ((r * std::cos(c.half_angle) - c.axis) / std::sin(c.half_angle)).normalized();
            },
            [&](const AngleBoxCone& c) -> Opt {
                if (contains(x) != Membership::boundary) return std::nullopt;
                const Vec w = x - c.apex;
                if (w.norm() <= 1e3 * eps) return std::nullopt;
                const ConeAngles a = cone_angles(c, w);
                const double az_gap = a.planar * std::abs(std::sin(std::clamp(a.az_margin, -kPi / 2, kPi / 2)));
                const double el_gap = w.norm() * std::abs(std::sin(std::clamp(a.el_margin, -kPi / 2, kPi / 2)));
                const bool on_az = az_gap <= eps, on_el = x.dim() == 3 && el_gap <= eps;
                if (on_az == on_el) return std::nullopt;
                const double az = std::atan2(w[1], w[0]);
                if (on_az) {
                    const bool at_lo = std::abs(std::remainder(az - c.az_lo, 2 * kPi)) <
                                       std::abs(std::remainder(az - c.az_hi, 2 * kPi));
                    const double edge = at_lo ? c.az_lo : c.az_hi;
                    Vec e(x.dim());
                    e[0] = -std::sin(edge);
                    e[1] = std::cos(edge);
                    return at_lo ? -e : e;
                }
                const double el = std::atan2(w[2], a.planar);
                const bool at_hi = std::abs(el - c.el_hi) < std::abs(el - c.el_lo);
                const double edge = at_hi ? c.el_hi : c.el_lo;
                Vec e{-std::sin(edge) * std::cos(az), -std::sin(edge) * std::sin(az), std::cos(edge)};
                return at_hi ? e : -e;
            },
            [&](const Supergraph& g) -> Opt {
                const Vec xr = x.drop(g.axis);
                if (std::abs(x[g.axis] - g.graph(xr)) > eps) return std::nullopt;
                if (g.graph.holder_exponent() <= 0.0) return std::nullopt;
                return Vec::insert(g.graph.gradient(xr), g.axis, -1.0).normalized();
            },
            [&](const Raster&) -> Opt { return std::nullopt; },
            [&](const Empty&) -> Opt { return std::nullopt; },
            [&](const Full&) -> Opt { return std::nullopt; },
            [&](const Complement& c) -> Opt {
                auto n = c.child.boundary_normal(x);
                if (n) return -*n;
                return std::nullopt;
            },
            [&](const Union& u) -> Opt {
                Opt found;
                for (const auto& ch : u.children) {
                    const Membership m = ch.contains(x);
                    if (m == Membership::inside) return std::nullopt;
                    if (m == Membership::boundary) {
                        if (found) return std::nullopt;
                        found = ch.boundary_normal(x);
                        if (!found) return std::nullopt;
                    }
                }
                return found;
            },
            [&](const Intersection& in) -> Opt {
                Opt found;
                for (const auto& ch : in.children) {
                    const Membership m = ch.contains(x);
                    if (m == Membership::outside) return std::nullopt;
                    if (m == Membership::boundary) {
                        if (found) return std::nullopt;
                        found = ch.boundary_normal(x);
                        if (!found) return std::nullopt;
                    }
                }
                return found;
            },
            [&](const Translate& t) -> Opt { return t.child.boundary_normal(x - t.shift); },
            [&](const Rotate& r) -> Opt {
                auto n = r.child.boundary_normal(r.rotation.transpose_times(x));
                if (n) return r.rotation * *n;
                return std::nullopt;
            },
            [&](const Scale& s) -> Opt { return s.child.boundary_normal(x / s.factor); },
        },
        node_->v);
}

std::vector<double> SetSpec::asymptotic_angles() const {
    std::vector<double> out;
    if (dim() != 2) return out;
    constexpr double pi = 3.14159265358979323846;
    auto angle = [](const Vec& d) { return std::atan2(d[1], d[0]); };
    auto append = [&](const std::vector<double>& a) { out.insert(out.end(), a.begin(), a.end()); };
    std::visit(
        overloaded{
            [&](const HalfSpace& h) {
                out.push_back(angle(Vec{-h.normal[1], h.normal[0]}));
                out.push_back(angle(Vec{h.normal[1], -h.normal[0]}));
            },
            [&](const CapCone& c) {
                const double a = angle(c.axis);
                out.push_back(a - c.half_angle);
                out.push_back(a + c.half_angle);
            },
            [&](const AngleBoxCone& c) {
                out.push_back(c.az_lo);
                out.push_back(c.az_hi);
            },
            [&](const Supergraph&) { out = {0.0, 0.5 * pi, pi, -0.5 * pi}; },
            [&](const Complement& c) { append(c.child.asymptotic_angles()); },
            [&](const Union& u) {
                for (const auto& ch : u.children) append(ch.asymptotic_angles());
            },
            [&](const Intersection& in) {
                for (const auto& ch : in.children) append(ch.asymptotic_angles());
            },
            [&](const Translate& t) { append(t.child.asymptotic_angles()); },
            [&](const Rotate& r) {
                for (double a : r.child.asymptotic_angles()) out.push_back(angle(r.rotation * Vec{std::cos(a), std::sin(a)}));
            },
            [&](const Scale& sc) { append(sc.child.asymptotic_angles()); },
            [&](const auto&) {},
        },
        node_->v);
    return out;
}

std::optional<double> SetSpec::bounding_radius() const {
    using Opt = std::optional<double>;
    return std::visit(
        overloaded{
            [&](const Ball& b) -> Opt { return b.center.norm() + b.radius; },
            [&](const Box& b) -> Opt {
                double r2 = 0.0;
                for (int i = 0; i < b.lo.dim(); ++i) r2 += std::max(b.lo[i] * b.lo[i], b.hi[i] * b.hi[i]);
                return std::sqrt(r2);
            },
            [&](const Raster& r) -> Opt {
                double r2 = 0.0;
                for (int i = 0; i < r.grid->dim(); ++i) {
                    const double lo = r.grid->origin[i], hi = lo + r.grid->cell * r.grid->dims[i];
                    r2 += std::max(lo * lo, hi * hi);
                }
                return std::sqrt(r2);
            },
            [&](const Empty&) -> Opt { return 0.0; },
            [&](const Union& u) -> Opt {
                double r = 0.0;
                for (const auto& ch : u.children) {
                    auto b = ch.bounding_radius();
                    if (!b) return std::nullopt;
                    r = std::max(r, *b);
                }
                return r;
            },
            [&](const Intersection& in) -> Opt {
                Opt best;
                for (const auto& ch : in.children)
                    if (auto b = ch.bounding_radius()) best = best ? std::min(*best, *b) : *b;
                return best;
            },
            [&](const Translate& t) -> Opt {
                auto b = t.child.bounding_radius();
                if (b) return *b + t.shift.norm();
                return std::nullopt;
            },
            [&](const Rotate& r) -> Opt { return r.child.bounding_radius(); },
            [&](const Scale& s) -> Opt {
                auto b = s.child.bounding_radius();
                if (b) return *b * s.factor;
                return std::nullopt;
            },
            [&](const auto&) -> Opt { return std::nullopt; },
        },
        node_->v);
}

}  // namespace fracperim
