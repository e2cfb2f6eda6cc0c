#include "fracperim/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "fracperim/alpha.hpp"
#include "fracperim/error.hpp"
#include "fracperim/kernels.hpp"
#include "fracperim/thresholds.hpp"

namespace fracperim {

namespace {

bool on_surface(double level, const Vec& p) { return std::abs(level) <= 1e-9 * (1.0 + p.norm()); }

GraphFunction shifted_graph(const GraphFunction& g, const Vec& shift_in, double shift_out) {
    if (shift_in.norm2() == 0.0 && shift_out == 0.0) return g;
    GraphFunction::Spec spec;
    spec.domain_dim = g.domain_dim();
    spec.eval = [=](const Vec& x) { return shift_out + g(x - shift_in); };
    spec.grad = [=](const Vec& x) { return g.gradient(x - shift_in); };
    spec.seminorm = [=](const Vec& c, double r) { return g.c1alpha_seminorm(c - shift_in, r); };
    spec.holder_exponent = g.holder_exponent();
    spec.growth = g.growth();
    return GraphFunction(std::move(spec));
}

void collect_charts(const SetSpec& E, const Vec& p, const Vec& shift, int orientation, std::vector<GraphChart>& out) {
    const int n = E.dim();
    const auto& v = E.node().v;
    if (const auto* b = std::get_if<SetSpec::Ball>(&v)) {
        const Vec c = b->center + shift;
        if (!on_surface((p - c).norm() - b->radius, p)) return;
        int k = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(p[i] - c[i]) > std::abs(p[k] - c[k])) k = i;
        const int below = p[k] < c[k] ? 1 : -1;
        out.push_back({graphs::hemisphere(c.drop(k), c[k], b->radius, -below), k, below * orientation});
        return;
    }
    if (const auto* h = std::get_if<SetSpec::HalfSpace>(&v)) {
        const double off = h->offset + h->normal.dot(shift);
        if (!on_surface(h->normal.dot(p) - off, p)) return;
        int k = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(h->normal[i]) > std::abs(h->normal[k])) k = i;
        const double nk = h->normal[k];
        Vec slope = h->normal.drop(k) * (-1.0 / nk);
        out.push_back({graphs::affine(off / nk, slope), k, (nk > 0 ? 1 : -1) * orientation});
        return;
    }
    if (const auto* g = std::get_if<SetSpec::Supergraph>(&v)) {
        GraphFunction u = shifted_graph(g->graph, shift.drop(g->axis), shift[g->axis]);
        if (!on_surface(p[g->axis] - u(p.drop(g->axis)), p)) return;
        out.push_back({u, g->axis, orientation});
        return;
    }
    if (const auto* c = std::get_if<SetSpec::Complement>(&v)) return collect_charts(c->child, p, shift, -orientation, out);
    if (const auto* t = std::get_if<SetSpec::Translate>(&v)) return collect_charts(t->child, p, shift + t->shift, orientation, out);
    if (const auto* u = std::get_if<SetSpec::Union>(&v)) {
        for (const auto& ch : u->children) collect_charts(ch, p, shift, orientation, out);
        return;
    }
    if (const auto* in = std::get_if<SetSpec::Intersection>(&v)) {
        for (const auto& ch : in->children) collect_charts(ch, p, shift, orientation, out);
        return;
    }
}

// Samples of the closed ball of radius rad about c in R^m.
std::vector<Vec> disc_samples(const Vec& c, double rad, int k) {
    std::vector<Vec> out;
    const int m = c.dim();
    if (m == 1) {
        for (int i = 0; i <= 2 * k; ++i) out.push_back(Vec{c[0] + rad * (static_cast<double>(i) / k - 1.0)});
        return out;
    }
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j) {
            Vec x{c[0] + rad * (2.0 * i / k - 1.0), c[1] + rad * (2.0 * j / k - 1.0)};
            if ((x - c).norm() <= rad) out.push_back(x);
        }
    return out;
}

double graph_dev(const GraphChart& ch, const Vec& p, double rad) {
    const Vec pp = p.drop(ch.axis);
    double dev = 0.0;
    for (const Vec& x : disc_samples(pp, rad, ch.u.domain_dim() == 1 ? 200 : 40))
        dev = std::max(dev, std::abs(ch.u(x) - p[ch.axis]));
    return dev;
}

}  // namespace

std::optional<Cylinder> fit_cylinder(const SetSpec& E, const GraphChart& chart, const Vec& p, double r0) {
    const int n = E.dim();
    const int k = chart.axis;
    const Vec pp = p.drop(k);
    double r = r0;
    for (int it = 0; it < 24; ++it, r *= 0.5) {
        const double dev = graph_dev(chart, p, 2.0 * r);
        const double h = std::max(2.2 * dev, r);
        bool ok = true;
        const int m = n == 2 ? 40 : 14;
        for (const Vec& xp : disc_samples(pp, 2.0 * r, m)) {
            const double u = chart.u(xp);
            for (int j = 0; j <= m && ok; ++j) {
                const double xk = p[k] + 2.0 * h * (2.0 * j / m - 1.0);
                const double lev = chart.orientation * (xk - u);
                if (std::abs(lev) < 1e-6 * (r + h)) continue;
                const Membership mem = E.contains(Vec::insert(xp, k, xk));
                if (mem == Membership::boundary) continue;
                if ((mem == Membership::inside) != (lev > 0.0)) ok = false;
            }
            if (!ok) break;
        }
        if (ok) return Cylinder{r, h};
    }
    return std::nullopt;
}

std::optional<GraphChart> auto_chart(const SetSpec& E, const Vec& p) {
    std::vector<GraphChart> cands;
    collect_charts(E, p, Vec(E.dim()), 1, cands);
    for (const auto& c : cands)
        if (fit_cylinder(E, c, p, 0.5)) return c;
    return std::nullopt;
}

CurvatureResult curvature_graph(const GraphChart& chart, const Vec& p, const SetSpec& E_far, double r, double h,
                                double s, const QuadratureConfig& cfg) {
    const int n = p.dim();
    require(n == 2 || n == 3, ErrorCode::dimension_mismatch, "graph formula needs n in {2,3}");
    require(E_far.dim() == n && chart.u.domain_dim() == n - 1, ErrorCode::dimension_mismatch, "chart dimension");
    require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "s must lie in (0,1)");
    require(r > 0.0 && h > 0.0, ErrorCode::invalid_argument, "cylinder needs r, h > 0");
    require(s < std::min(1.0, chart.u.holder_exponent()) || (chart.u.holder_exponent() >= 1.0 && s < 1.0),
            ErrorCode::precondition_violated, "s must be below the Hoelder exponent of the gradient");
    const int k = chart.axis;
    const double sg = chart.orientation;
    const Vec pp = p.drop(k);
    auto v = [&](const Vec& x) { return sg * chart.u(x); };
    const double v0 = v(pp);
    require(on_surface(v0 - sg * p[k], p), ErrorCode::precondition_violated, "point is not on the graph");
    require(graph_dev(chart, p, r) < h, ErrorCode::precondition_violated, "graph leaves the cylinder");
    const Vec g0 = chart.u.gradient(pp) * sg;
    std::vector<double> H0 = chart.u.hessian(pp, 1e-4 * r);
    for (double& x : H0) x *= sg;
    const int m = n - 1;

    const double ymin = 1e-5 * r;
    AdaptiveOptions ao;
    ao.rel_tol = cfg.rel_tol;
    ao.abs_tol = cfg.abs_tol;
    ao.max_intervals = cfg.max_subdiv;
    ao.order = cfg.angular_order;
    const double lo = std::log(ymin), hi = std::log(r);
    std::vector<double> tau_breaks;
    for (int i = 0; i <= 8; ++i) tau_breaks.push_back(lo + (hi - lo) * i / 8.0);

    // Radial integral of f_e(rho) rho^{-1-s} over (0, r), with its Taylor-piece error in component 2.
    auto radial = [&](const Vec& e, double* out) {
        const double b = g0.dot(e);
        auto f = [&](double rho) {
            const double a = (v(pp + e * rho) - v0) / rho;
            return G_difference(n, s, a, b);
        };
        double quad_e = 0.0;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) quad_e += e[i] * H0[i * m + j] * e[j];
        const double c1 = 0.5 * g_kernel(n, s, b) * quad_e;
        const double wgt = std::pow(ymin, 1.0 - s) / (1.0 - s);
        const AdaptiveResult outer = integrate_adaptive(
            [&](double tau, double* o) {
                const double rho = std::exp(tau);
                o[0] = f(rho) * std::exp(-s * tau);
                o[1] = std::abs(o[0]);
            },
            2, tau_breaks, [&] { AdaptiveOptions o = ao; o.scale_of = {1, 1}; return o; }());
        out[0] = c1 * wgt + outer.value[0];
        out[1] = outer.error[0];
        out[2] = std::abs(f(ymin) / ymin - c1) * wgt;
        out[3] = outer.converged ? 0.0 : 1.0;
    };

    CurvatureResult res;
    res.s = s;
    res.method = "graph";
    double local = 0.0, local_err = 0.0;
    bool local_ok = true;
    if (n == 2) {
        double a[4], b[4];
        radial(Vec{1.0}, a);
        radial(Vec{-1.0}, b);
        local = 2.0 * (a[0] + b[0]);
        local_err = 2.0 * (a[1] + b[1] + a[2] + b[2]);
        local_ok = a[3] == 0.0 && b[3] == 0.0;
    } else {
        const AdaptiveResult lr = integrate_adaptive(
            [&](double psi, double* o) {
                radial(Vec{std::cos(psi), std::sin(psi)}, o);
                o[1] += o[2];
            },
            4, [&] {
                std::vector<double> br;
                for (int i = 0; i <= cfg.angular_panels; ++i) br.push_back(2.0 * M_PI * i / cfg.angular_panels);
                return br;
            }(),
            ao);
        local = 2.0 * lr.value[0];
        local_err = 2.0 * (lr.error[0] + lr.value[1]);
        local_ok = lr.converged && lr.value[3] == 0.0;
    }

    // Tail outside the cylinder in the original frame, antipodal directions paired.
    auto exit_time = [&](const Vec& d) {
        double lat = 0.0;
        for (int i = 0; i < n; ++i)
            if (i != k) lat += d[i] * d[i];
        const double tl = lat > 0.0 ? r / std::sqrt(lat) : kInf;
        const double tv = d[k] != 0.0 ? h / std::abs(d[k]) : kInf;
        return std::min(tl, tv);
    };
    auto ray_value = [&](const Vec& d) {
        const double T = exit_time(d);
        return std::pow(T, -s) / s - 2.0 * radial_mass(E_far.ray(p, d, T, cfg.rays), T, s);
    };
    auto pair = [&](const Vec& d, double* o) {
        const double a = ray_value(d), b = ray_value(-d);
        o[0] = a + b;
        o[1] = std::abs(a) + std::abs(b);
    };
    AdaptiveOptions to = ao;
    to.scale_of = {1, 1};
    AdaptiveResult tail;
    std::vector<Vec> lat;
    for (int i = 0; i < n; ++i)
        if (i != k) lat.push_back(Vec::unit(n, i));
    const Vec ax = Vec::unit(n, k);
    if (n == 2) {
        const double tc = std::atan2(h, r);
        tail = integrate_adaptive(
            [&](double th, double* o) { pair(std::cos(th) * lat[0] + std::sin(th) * ax, o); }, 2,
            {0.0, 0.5 * tc, tc, 0.5 * M_PI, M_PI - tc, M_PI - 0.5 * tc, M_PI}, to);
    } else {
        const double pc = std::atan2(r, h);
        auto inner = [&](double phi) {
            const double sp = std::sin(phi), cp = std::cos(phi);
            std::vector<double> br;
            for (int i = 0; i <= cfg.angular_panels; ++i) br.push_back(2.0 * M_PI * i / cfg.angular_panels);
            return integrate_adaptive(
                [&](double psi, double* o) {
                    pair(sp * (std::cos(psi) * lat[0] + std::sin(psi) * lat[1]) + cp * ax, o);
                },
                2, br, to);
        };
        tail = integrate_nested(2, {0.0, 0.5 * pc, pc, 0.5 * (pc + 0.5 * M_PI), 0.5 * M_PI}, to, inner,
                                [](double phi) { return std::sin(phi); });
    }
    res.local_part = local;
    res.tail_part = tail.value[0];
    res.value = res.local_part + res.tail_part;
    res.error_estimate = local_err + tail.error[0];
    res.converged = local_ok && tail.converged;
    res.scaled_s0 = s * res.value;
    res.scaled_s1 = (1.0 - s) * res.value;
    return res;
}

CurvatureResult curvature_graph(const GraphFunction& u, const Vec& p, const SetSpec& E_far, double r, double h,
                                double s, const QuadratureConfig& cfg) {
    return curvature_graph(GraphChart{u, p.dim() - 1, 1}, p, E_far, r, h, s, cfg);
}

CurvatureResult curvature_pv(const SetSpec& E, const Vec& p, double s, const QuadratureConfig& cfg) {
    const PVEstimate pv = pv_curvature_integral(E, p, s, cfg);
    CurvatureResult res;
    res.s = s;
    res.method = "pv";
    res.value = pv.value;
    res.local_part = pv.value;
    res.tail_part = 0.0;
    res.error_estimate = pv.error_estimate;
    res.converged = pv.converged;
    res.scaled_s0 = s * res.value;
    res.scaled_s1 = (1.0 - s) * res.value;
    return res;
}

CurvatureResult curvature_at(const SetSpec& E, const Vec& p, double s, const QuadratureConfig& cfg) {
    std::vector<GraphChart> cands;
    collect_charts(E, p, Vec(E.dim()), 1, cands);
    if (E.dim() >= 2)
        for (const auto& c : cands) {
            const double he = c.u.holder_exponent();
            if (!(he >= 1.0 || s < he)) continue;
            if (auto cyl = fit_cylinder(E, c, p, 0.5 * cfg.r_local)) return curvature_graph(c, p, E, cyl->r, cyl->h, s, cfg);
        }
    return curvature_pv(E, p, s, cfg);
}

double curvature_truncated(const SetSpec& E, const Vec& q, double s, double rho, const QuadratureConfig& cfg) {
    return truncated_integral(E, q, s, rho, cfg).value;
}

double classical_curvature(const GraphChart& chart, const Vec& p, double step) {
    const int m = chart.u.domain_dim();
    const Vec pp = p.drop(chart.axis);
    const Vec g = chart.u.gradient(pp) * static_cast<double>(chart.orientation);
    std::vector<double> H = chart.u.hessian(pp, step);
    for (double& x : H) x *= chart.orientation;
    if (m == 1) return H[0] / std::pow(1.0 + g[0] * g[0], 1.5);
    const double num = (1.0 + g[1] * g[1]) * H[0] - 2.0 * g[0] * g[1] * H[1] + (1.0 + g[0] * g[0]) * H[3];
    return 0.5 * num / std::pow(1.0 + g.norm2(), 1.5);
}

std::optional<double> classical_curvature(const SetSpec& E, const Vec& p) {
    // Balls reached through complements and translations: exact value.
    const SetSpec* cur = &E;
    int sign = 1;
    Vec shift(E.dim());
    for (;;) {
        const auto& v = cur->node().v;
        if (const auto* c = std::get_if<SetSpec::Complement>(&v)) {
            sign = -sign;
            cur = &c->child;
        } else if (const auto* t = std::get_if<SetSpec::Translate>(&v)) {
            shift += t->shift;
            cur = &t->child;
        } else {
            break;
        }
    }
    if (const auto* b = std::get_if<SetSpec::Ball>(&cur->node().v))
        if (on_surface((p - b->center - shift).norm() - b->radius, p)) return sign / b->radius;
    std::vector<GraphChart> cands;
    collect_charts(E, p, Vec(E.dim()), 1, cands);
    for (const auto& c : cands)
        if (auto cyl = fit_cylinder(E, c, p, 0.5)) return classical_curvature(c, p, 1e-4 * cyl->r);
    return std::nullopt;
}

std::string to_string(ScanMode mode) {
    switch (mode) {
        case ScanMode::raw: return "raw";
        case ScanMode::times_s: return "times_s";
        case ScanMode::times_one_minus_s: return "times_one_minus_s";
    }
    return "raw";
}

ScanMode scan_mode_from_string(const std::string& name) {
    for (auto m : {ScanMode::raw, ScanMode::times_s, ScanMode::times_one_minus_s})
        if (to_string(m) == name) return m;
    fail(ErrorCode::invalid_argument, "unknown scan mode: " + name);
}

namespace {

// Intercept at x = 0 of the least-squares line through (x_i, y_i).
double intercept(const std::vector<double>& x, const std::vector<double>& y) {
    const double N = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = N * sxx - sx * sx;
    if (den == 0.0) return sy / N;
    const double slope = (N * sxy - sx * sy) / den;
    return (sy - slope * sx) / N;
}

}  // namespace

CurvatureScan curvature_scan(const SetSpec& E, const Vec& p, const std::vector<double>& s_grid, ScanMode mode,
                             const QuadratureConfig& cfg, std::optional<double> curvature_H) {
    CurvatureScan scan;
    scan.mode = mode;
    for (double s : s_grid) scan.rows.push_back(curvature_at(E, p, s, cfg));
    const int n = E.dim();
    if (mode == ScanMode::raw || scan.rows.empty()) return scan;
    std::vector<std::size_t> idx(scan.rows.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    if (mode == ScanMode::times_s) {
        double a;
        if (auto c = alpha_closed_form(E))
            a = c->value;
        else
            a = alpha_limit(E, p, 1.0, cfg).extrapolated_limit;
        scan.predicted_limit = omega(n) - 2.0 * a;
        std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return scan.rows[i].s < scan.rows[j].s; });
    } else {
        const auto H = curvature_H ? curvature_H : classical_curvature(E, p);
        if (H) scan.predicted_limit = omega(n - 1) * *H;
        std::sort(idx.begin(), idx.end(), [&](auto i, auto j) { return scan.rows[i].s > scan.rows[j].s; });
    }
    std::vector<double> x, y;
    for (std::size_t t = 0; t < std::min<std::size_t>(3, idx.size()); ++t) {
        const auto& row = scan.rows[idx[t]];
        x.push_back(mode == ScanMode::times_s ? row.s : 1.0 - row.s);
        y.push_back(mode == ScanMode::times_s ? row.scaled_s0 : row.scaled_s1);
    }
    scan.extrapolated_limit = intercept(x, y);
    return scan;
}

std::string to_string(PerturbationKind kind) {
    switch (kind) {
        case PerturbationKind::graph: return "graph";
        case PerturbationKind::point_shift: return "point_shift";
        case PerturbationKind::s_shift: return "s_shift";
    }
    return "graph";
}

PerturbationKind perturbation_from_string(const std::string& name) {
    for (auto k : {PerturbationKind::graph, PerturbationKind::point_shift, PerturbationKind::s_shift})
        if (to_string(k) == name) return k;
    fail(ErrorCode::invalid_argument, "unknown perturbation: " + name);
}

ContinuityReport continuity_probe(const SetSpec& E, const Vec& p, double s, PerturbationKind kind,
                                  const std::vector<double>& etas, const QuadratureConfig& cfg) {
    ContinuityReport rep;
    rep.kind = kind;
    rep.s = s;
    rep.etas = etas;
    const auto chart = auto_chart(E, p);
    std::optional<Cylinder> cyl;
    if (chart) cyl = fit_cylinder(E, *chart, p, 0.5 * cfg.r_local);
    CurvatureResult base = (kind == PerturbationKind::graph)
                               ? (require(chart && cyl, ErrorCode::unclassified_set, "graph perturbation needs a chart"),
                                  curvature_graph(*chart, p, E, cyl->r, cyl->h, s, cfg))
                               : curvature_at(E, p, s, cfg);
    rep.base_value = base.value;
    for (double eta : etas) {
        CurvatureResult cur;
        if (eta == 0.0) {
            cur = base;
        } else if (kind == PerturbationKind::graph) {
            const Vec pp = p.drop(chart->axis);
            GraphChart pc = *chart;
            pc.u = graphs::perturbed(chart->u, eta, pp, 0.5 * cyl->r);
            const Vec q = Vec::insert(pp, chart->axis, pc.u(pp));
            cur = curvature_graph(pc, q, E, cyl->r, cyl->h + 2.0 * eta, s, cfg);
        } else if (kind == PerturbationKind::point_shift) {
            require(chart.has_value(), ErrorCode::unclassified_set, "point shift needs a chart");
            const Vec pp = p.drop(chart->axis);
            const Vec dir = Vec::unit(pp.dim(), 0);
            // Move along the first graph coordinate until the arclength reaches eta.
            auto arclength = [&](double x) {
                AdaptiveOptions ao;
                ao.rel_tol = 1e-10;
                return integrate_adaptive(
                           [&](double t, double* o) {
                               const double g = chart->u.gradient(pp + dir * t).dot(dir);
                               o[0] = std::sqrt(1.0 + g * g);
                           },
                           1, {0.0, x}, ao)
                    .value[0];
            };
            double lo = 0.0, hi = eta;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                (arclength(mid) < eta ? lo : hi) = mid;
            }
            const Vec qp = pp + dir * (0.5 * (lo + hi));
            cur = curvature_at(E, Vec::insert(qp, chart->axis, chart->u(qp)), s, cfg);
        } else {
            cur = curvature_at(E, p, s + eta, cfg);
        }
        rep.differences.push_back(std::abs(cur.value - base.value));
        rep.errors.push_back(cur.error_estimate + base.error_estimate);
    }
    for (std::size_t i = 1; i < rep.differences.size(); ++i)
        if (rep.differences[i] > rep.differences[i - 1] + rep.errors[i] + rep.errors[i - 1]) rep.monotone = false;
    return rep;
}

}  // namespace fracperim
