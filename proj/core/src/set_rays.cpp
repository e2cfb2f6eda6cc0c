#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "fracperim/error.hpp"
#include "fracperim/set_spec.hpp"

namespace fracperim {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Real roots of a t^2 + 2 b t + c = 0.
void quadratic_roots(double a, double b, double c, std::vector<double>& out) {
    const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
    if (scale == 0.0) return;
    if (std::abs(a) <= 1e-14 * scale) {
        if (b != 0.0) out.push_back(-c / (2.0 * b));
        return;
    }
    const double disc = b * b - a * c;
    if (disc < 0.0) return;
    const double q = -(b + std::copysign(std::sqrt(disc), b));
    if (q != 0.0) {
        out.push_back(q / a);
        out.push_back(c / q);
    } else {
        out.push_back(0.0);
    }
}

// Root of fn in (l, r) with fl, fr of opposite sign; wide positive brackets are first narrowed geometrically.
template <class Fn>
double bracketed_root(const Fn& fn, double l, double r, double fl, double fr) {
    while (l > 0.0 && r > 4.0 * l) {
        const double m = std::sqrt(l * r), fm = fn(m);
        if (fm == 0.0) return m;
        if ((fm > 0.0) == (fl > 0.0)) {
            l = m;
            fl = fm;
        } else {
            r = m;
            fr = fm;
        }
    }
    boost::uintmax_t iters = 100;
    const auto tol = [](double a, double b) { return std::abs(b - a) <= 4e-16 * std::max(std::abs(a), 1e-300); };
    const auto root = boost::math::tools::toms748_solve(fn, l, r, fl, fr, tol, iters);
    return 0.5 * (root.first + root.second);
}

// Classifies the segments delimited by candidate breakpoints with a point predicate.
template <class Pred>
IntervalSet segments_from_breaks(std::vector<double> breaks, double t_lo, Pred inside_at) {
    std::vector<double> cuts{t_lo};
    std::sort(breaks.begin(), breaks.end());
    for (double b : breaks)
        if (std::isfinite(b) && b > cuts.back() * (1.0 + 1e-15) + 1e-300) cuts.push_back(b);
    std::vector<bool> flags(cuts.size());
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        const double a = cuts[k];
        const double t = (k + 1 < cuts.size()) ? 0.5 * (a + cuts[k + 1]) : a + std::max(1.0, a);
        flags[k] = inside_at(t);
    }
    IntervalSet r = IntervalSet::from_segments(cuts, flags);
    return r;
}

IntervalSet ray_half_space(const SetSpec::HalfSpace& h, const Vec& o, const Vec& d, double t_lo) {
    double a = h.normal.dot(o) - h.offset;
    const double b = h.normal.dot(d);
    if (std::abs(a) <= eps_geo(o)) a = 0.0;
    if (b == 0.0) return a > 0.0 ? IntervalSet::all(t_lo) : IntervalSet::none(t_lo);
    const double root = -a / b;
    if (b > 0.0) return IntervalSet(t_lo, {{std::max(root, t_lo), kInf}});
    return IntervalSet(t_lo, {{t_lo, root}});
}

IntervalSet ray_ball(const SetSpec::Ball& ball, const Vec& o, const Vec& d, double t_lo) {
    const Vec w = o - ball.center;
    const double a = d.norm2();
    const double b = w.dot(d);
    double c = w.norm2() - ball.radius * ball.radius;
    if (std::abs(w.norm() - ball.radius) <= eps_geo(o)) c = 0.0;
    const double disc = b * b - a * c;
    if (disc <= 0.0) return IntervalSet::none(t_lo);
    const double q = -(b + std::copysign(std::sqrt(disc), b));
    double t1 = q / a;
    double t2 = (q != 0.0) ? c / q : t1;
    if (t1 > t2) std::swap(t1, t2);
    return IntervalSet(t_lo, {{t1, t2}});
}

IntervalSet ray_box(const SetSpec::Box& box, const Vec& o, const Vec& d, double t_lo) {
    double enter = -kInf, leave = kInf;
    for (int i = 0; i < o.dim(); ++i) {
        if (d[i] == 0.0) {
            if (!(o[i] > box.lo[i] && o[i] < box.hi[i])) return IntervalSet::none(t_lo);
            continue;
        }
        double ta = (box.lo[i] - o[i]) / d[i], tb = (box.hi[i] - o[i]) / d[i];
        if (ta > tb) std::swap(ta, tb);
        enter = std::max(enter, ta);
        leave = std::min(leave, tb);
    }
    if (!(leave > enter)) return IntervalSet::none(t_lo);
    return IntervalSet(t_lo, {{enter, leave}});
}

bool cap_cone_inside(const SetSpec::CapCone& c, const Vec& w) {
    const double r = w.norm();
    return r > 0.0 && w.dot(c.axis) > std::cos(c.half_angle) * r;
}

IntervalSet ray_cap_cone(const SetSpec::CapCone& c, const Vec& o, const Vec& d, double t_lo) {
    const Vec w0 = o - c.apex;
    const double ct = std::cos(c.half_angle), c2 = ct * ct;
    const double dk = d.dot(c.axis), wk = w0.dot(c.axis);
    double cc = wk * wk - c2 * w0.norm2();
    if (w0.norm() > 0 && std::abs(std::acos(std::clamp(wk / w0.norm(), -1.0, 1.0)) - c.half_angle) * w0.norm() <=
                             eps_geo(o))
        cc = 0.0;
    std::vector<double> breaks;
    quadratic_roots(dk * dk - c2 * d.norm2(), dk * wk - c2 * d.dot(w0), cc, breaks);
    // Closest approach to the apex, where the squared test can change branch.
    const double tap = -w0.dot(d) / d.norm2();
    if ((w0 + d * tap).norm() <= 1e-12 * (1.0 + w0.norm())) breaks.push_back(tap);
    return segments_from_breaks(breaks, t_lo, [&](double t) { return cap_cone_inside(c, w0 + d * t); });
}

bool angle_box_inside(const SetSpec::AngleBoxCone& c, const Vec& w) {
    const double az = std::atan2(w[1], w[0]);
    double t = std::fmod(az - c.az_lo, 2.0 * kPi);
    if (t < 0) t += 2.0 * kPi;
    if (!(t > 0.0 && t < c.az_hi - c.az_lo)) return false;
    if (w.dim() == 3) {
        const double el = std::atan2(w[2], std::hypot(w[0], w[1]));
        return el > c.el_lo && el < c.el_hi;
    }
    return w.norm() > 0.0;
}

IntervalSet ray_angle_box(const SetSpec::AngleBoxCone& c, const Vec& o, const Vec& d, double t_lo) {
    const Vec w0 = o - c.apex;
    std::vector<double> breaks;
    for (double edge : {c.az_lo, c.az_hi}) {
        const double mx = -std::sin(edge), my = std::cos(edge);
        const double num = mx * w0[0] + my * w0[1], den = mx * d[0] + my * d[1];
        if (den != 0.0) breaks.push_back(-num / den);
    }
    if (o.dim() == 3) {
        for (double el : {c.el_lo, c.el_hi}) {
            if (std::abs(std::abs(el) - kPi / 2) < 1e-15) continue;
            const double tn = std::tan(el), t2 = tn * tn;
            quadratic_roots(d[2] * d[2] - t2 * (d[0] * d[0] + d[1] * d[1]),
                            d[2] * w0[2] - t2 * (d[0] * w0[0] + d[1] * w0[1]),
                            w0[2] * w0[2] - t2 * (w0[0] * w0[0] + w0[1] * w0[1]), breaks);
        }
        const double dp = d[0] * d[0] + d[1] * d[1];
        if (dp > 0.0) {
            const double tax = -(w0[0] * d[0] + w0[1] * d[1]) / dp;
            if (std::hypot(w0[0] + tax * d[0], w0[1] + tax * d[1]) <= 1e-12 * (1.0 + w0.norm()))
                breaks.push_back(tax);
        }
    } else {
        const double tap = -w0.dot(d) / d.norm2();
        if ((w0 + d * tap).norm() <= 1e-12 * (1.0 + w0.norm())) breaks.push_back(tap);
    }
    return segments_from_breaks(breaks, t_lo, [&](double t) { return angle_box_inside(c, w0 + d * t); });
}

IntervalSet ray_supergraph(const SetSpec::Supergraph& g, const Vec& o, const Vec& d, double t_lo,
                           const RayOptions& opt) {
    const int k = g.axis;
    auto level = [&](double t) {
        const Vec x = o + d * t;
        return x[k] - g.graph(x.drop(k));
    };
    const double dn = d.norm();
    double offset = level(0.0);
    if (std::abs(offset) > eps_geo(o)) offset = 0.0;
    auto f = [&](double t) { return level(t) - offset; };

    const double t_first = std::max(t_lo, opt.t_first_rel * (1.0 + o.norm()) / dn);
    const double t_max = opt.t_max_rel * (1.0 + o.norm()) / dn;
    const GrowthTag& tag = g.graph.growth();
    const bool bounded = tag.kind == GrowthTag::Kind::bounded;
    const bool enveloped = tag.kind == GrowthTag::Kind::sublinear && tag.envelope_c > 0.0 && tag.envelope_p < 1.0;
    const Vec d_lat = d.drop(k);
    // Past this point |x_k| outgrows the envelope along the ray, so the sign of the level is final.
    auto settled = [&](double t) {
        const Vec x = o + d * t;
        const Vec xl = x.drop(k);
        if ((x[k] > 0.0) != (d[k] > 0.0) || xl.dot(d_lat) < 0.0) return false;
        const double q = 1.0 + xl.norm2();
        const double env = tag.envelope_c * std::pow(q, 0.5 * tag.envelope_p);
        const double env_rate = tag.envelope_c * tag.envelope_p * d_lat.norm() * std::pow(q, 0.5 * (tag.envelope_p - 1.0));
        return std::abs(x[k]) > env * (1.0 + 1e-12) + 1e-12 && std::abs(d[k]) >= env_rate;
    };

    std::vector<double> breaks;
    std::vector<bool> flags;
    breaks.push_back(t_lo);
    if (const auto& infl = g.graph.line_inflections(); infl) {
        // f is convex or concave between inflections, so f' is monotone there and f monotone between its
        // critical points: every crossing is bracketed.
        const Vec a_lat = o.drop(k);
        auto df = [&](double t) { return d[k] - g.graph.gradient(a_lat + d_lat * t).dot(d_lat); };
        std::vector<double> pieces{t_first};
        for (double ti : infl(a_lat, d_lat))
            if (ti > t_first && ti < t_max) pieces.push_back(ti);
        std::sort(pieces.begin(), pieces.end());
        pieces.push_back(t_max);
        std::vector<double> nodes{t_first};
        for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
            const double l = pieces[i], r = pieces[i + 1], dl = df(l), dr = df(r);
            if (i > 0) nodes.push_back(l);
            if ((dl > 0.0) != (dr > 0.0) && dl != 0.0 && dr != 0.0) {
                nodes.push_back(bracketed_root(df, l, r, dl, dr));
            }
        }
        nodes.push_back(t_max);
        std::sort(nodes.begin(), nodes.end());
        double f_prev = f(nodes.front());
        flags.push_back(f_prev > 0.0);
        for (std::size_t i = 1; i < nodes.size(); ++i) {
            if (nodes[i] <= nodes[i - 1]) continue;
            const double fr = f(nodes[i]);
            if ((fr > 0.0) != (f_prev > 0.0)) {
                breaks.push_back(bracketed_root(f, nodes[i - 1], nodes[i], f_prev, fr));
                flags.push_back(fr > 0.0);
            }
            f_prev = fr;
        }
        for (std::size_t i = 1; i < breaks.size(); ++i)
            if (breaks[i] <= breaks[i - 1]) breaks[i] = std::nextafter(breaks[i - 1], kInf);
        return IntervalSet::from_segments(breaks, flags);
    }
    double t_prev = t_first;
    double f_prev = f(t_prev);
    flags.push_back(f_prev > 0.0);
    double t = t_prev;
    while (t < t_max) {
        t = std::min(t * opt.growth, t_max);
        const double ft = f(t);
        if ((ft > 0.0) != (f_prev > 0.0)) {
            breaks.push_back(bracketed_root(f, t_prev, t, f_prev, ft));
            flags.push_back(ft > 0.0);
        }
        t_prev = t;
        f_prev = ft;
        if (bounded && d[k] != 0.0) {
            const double xk = o[k] + d[k] * t;
            if (std::abs(xk) > tag.bound * (1.0 + 1e-12) + 1e-12 && (xk > 0.0) == (d[k] > 0.0)) break;
        }
        if (enveloped && d[k] != 0.0 && settled(t)) break;
    }
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (breaks[i] <= breaks[i - 1]) breaks[i] = std::nextafter(breaks[i - 1], kInf);
    return IntervalSet::from_segments(breaks, flags);
}

IntervalSet ray_raster(const RasterGrid& grid, const Vec& o, const Vec& d, double t_lo) {
    std::vector<double> breaks;
    for (int i = 0; i < grid.dim(); ++i) {
        if (d[i] == 0.0) continue;
        for (int m = 0; m <= grid.dims[i]; ++m) {
            const double plane = grid.origin[i] + grid.cell * m;
            breaks.push_back((plane - o[i]) / d[i]);
        }
    }
    return segments_from_breaks(breaks, t_lo, [&](double t) {
        const auto idx = grid.locate(o + d * t);
        return idx && grid.occupied[*idx] != 0;
    });
}

}  // namespace

IntervalSet SetSpec::ray(const Vec& o, const Vec& d, double t_lo, const RayOptions& opt) const {
    require(o.dim() == dim() && d.dim() == dim(), ErrorCode::dimension_mismatch, "ray dimension");
    require(d.norm2() > 0.0, ErrorCode::invalid_argument, "ray direction must be non-zero");
    return std::visit(
        overloaded{
            [&](const HalfSpace& h) { return ray_half_space(h, o, d, t_lo); },
            [&](const Ball& b) { return ray_ball(b, o, d, t_lo); },
            [&](const Box& b) { return ray_box(b, o, d, t_lo); },
            [&](const CapCone& c) { return ray_cap_cone(c, o, d, t_lo); },
            [&](const AngleBoxCone& c) { return ray_angle_box(c, o, d, t_lo); },
            [&](const Supergraph& g) { return ray_supergraph(g, o, d, t_lo, opt); },
            [&](const Raster& r) { return ray_raster(*r.grid, o, d, t_lo); },
            [&](const Empty&) { return IntervalSet::none(t_lo); },
            [&](const Full&) { return IntervalSet::all(t_lo); },
            [&](const Complement& c) { return c.child.ray(o, d, t_lo, opt).complement(); },
            [&](const Union& u) {
                IntervalSet acc = u.children.front().ray(o, d, t_lo, opt);
                for (std::size_t i = 1; i < u.children.size(); ++i)
                    acc = IntervalSet::unite(acc, u.children[i].ray(o, d, t_lo, opt));
                return acc;
            },
            [&](const Intersection& in) {
                IntervalSet acc = in.children.front().ray(o, d, t_lo, opt);
                for (std::size_t i = 1; i < in.children.size() && !acc.empty(); ++i)
                    acc = IntervalSet::intersect(acc, in.children[i].ray(o, d, t_lo, opt));
                return acc;
            },
            [&](const Translate& t) { return t.child.ray(o - t.shift, d, t_lo, opt); },
            [&](const Rotate& r) {
                return r.child.ray(r.rotation.transpose_times(o), r.rotation.transpose_times(d), t_lo, opt);
            },
            [&](const Scale& s) { return s.child.ray(o / s.factor, d / s.factor, t_lo, opt); },
        },
        node_->v);
}

}  // namespace fracperim
