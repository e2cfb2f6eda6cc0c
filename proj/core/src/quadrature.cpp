#include "fracperim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fracperim/error.hpp"

namespace fracperim {

std::vector<double> QuadratureConfig::rho_schedule() const {
    if (!pv_rho_schedule.empty()) return pv_rho_schedule;
    std::vector<double> out;
    double rho = 0.5 * r_local;
    for (int k = 0; k < 12; ++k, rho *= 0.5) out.push_back(rho);
    return out;
}

namespace {

// Kronrod rule on [-1, 1] unfolded to all nodes, with embedded Gauss weights (0 off the Gauss subset).
struct Rule {
    std::vector<double> x, wk, wg;
};

template <unsigned N>
Rule make_rule() {
    namespace bq = boost::math::quadrature;
    const auto& ka = bq::gauss_kronrod<double, N>::abscissa();
    const auto& kw = bq::gauss_kronrod<double, N>::weights();
    const auto& ga = bq::gauss<double, (N - 1) / 2>::abscissa();
    const auto& gw = bq::gauss<double, (N - 1) / 2>::weights();
    Rule r;
    for (std::size_t i = 0; i < ka.size(); ++i) {
        double g = 0.0;
        for (std::size_t j = 0; j < ga.size(); ++j)
            if (std::abs(ga[j] - ka[i]) < 1e-14) g = gw[j];
        r.x.push_back(ka[i]);
        r.wk.push_back(kw[i]);
        r.wg.push_back(g);
        if (ka[i] != 0.0) {
            r.x.push_back(-ka[i]);
            r.wk.push_back(kw[i]);
            r.wg.push_back(g);
        }
    }
    return r;
}

const Rule& rule(int order) {
    static const Rule r15 = make_rule<15>(), r21 = make_rule<21>(), r31 = make_rule<31>(), r41 = make_rule<41>(),
                      r51 = make_rule<51>(), r61 = make_rule<61>();
    switch (order) {
        case 15: return r15;
        case 21: return r21;
        case 31: return r31;
        case 41: return r41;
        case 51: return r51;
        case 61: return r61;
        default: fail(ErrorCode::invalid_argument, "Kronrod order must be one of 15, 21, 31, 41, 51, 61");
    }
}

struct Panel {
    double a, b;
    std::vector<double> val, err;
};

void apply_rule(const Rule& r, const VecIntegrand& f, int dim, Panel& p, std::vector<double>& buf,
                std::vector<double>& gsum) {
    const double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
    const std::size_t N = r.x.size();
    thread_local std::vector<double> vals;
    vals.resize(N * dim);
    p.val.assign(dim, 0.0);
    p.err.assign(dim, 0.0);
    gsum.assign(dim, 0.0);
    for (std::size_t i = 0; i < N; ++i) {
        f(mid + half * r.x[i], buf.data());
        for (int c = 0; c < dim; ++c) {
            vals[i * dim + c] = buf[c];
            p.val[c] += r.wk[i] * buf[c];
            gsum[c] += r.wg[i] * buf[c];
        }
    }
    // QUADPACK error scaling: |K - G| measured against the mean absolute deviation of f on the panel.
    for (int c = 0; c < dim; ++c) {
        const double mean = 0.5 * p.val[c];
        double resasc = 0.0;
        for (std::size_t i = 0; i < N; ++i) resasc += r.wk[i] * std::abs(vals[i * dim + c] - mean);
        resasc *= half;
        p.val[c] *= half;
        double err = std::abs(p.val[c] - half * gsum[c]);
        if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
        p.err[c] = std::max(err, std::abs(err));
    }
}

}  // namespace

AdaptiveResult integrate_adaptive(const VecIntegrand& f, int dim, const std::vector<double>& breaks,
                                  const AdaptiveOptions& opt) {
    require(breaks.size() >= 2, ErrorCode::invalid_argument, "need at least one panel");
    const Rule& r = rule(opt.order);
    std::vector<bool> control = opt.control;
    if (control.empty()) control.assign(dim, false), control[0] = true;
    require(static_cast<int>(control.size()) == dim, ErrorCode::invalid_argument, "control mask size");

    std::vector<double> buf(dim), gsum;
    std::vector<Panel> panels;
    AdaptiveResult res;
    res.value.assign(dim, 0.0);
    res.error.assign(dim, 0.0);

    auto metric = [&](const Panel& p) {
        double m = 0.0;
        for (int c = 0; c < dim; ++c)
            if (control[c]) m = std::max(m, p.err[c]);
        return m;
    };
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item> heap;
    auto add_panel = [&](double a, double b) {
        Panel p{a, b, {}, {}};
        apply_rule(r, f, dim, p, buf, gsum);
        res.evaluations += static_cast<long>(r.x.size());
        for (int c = 0; c < dim; ++c) {
            res.value[c] += p.val[c];
            res.error[c] += p.err[c];
        }
        panels.push_back(std::move(p));
        heap.emplace(metric(panels.back()), panels.size() - 1);
    };
    for (std::size_t k = 0; k + 1 < breaks.size(); ++k)
        if (breaks[k + 1] > breaks[k]) add_panel(breaks[k], breaks[k + 1]);

    std::vector<int> scale_of = opt.scale_of;
    if (scale_of.empty())
        for (int c = 0; c < dim; ++c) scale_of.push_back(c);
    require(static_cast<int>(scale_of.size()) == dim, ErrorCode::invalid_argument, "scale map size");
    auto done = [&] {
        for (int c = 0; c < dim; ++c)
            if (control[c] &&
                res.error[c] > std::max(opt.abs_tol, opt.rel_tol * std::abs(res.value[scale_of[c]])))
                return false;
        return true;
    };
    while (!done()) {
        if (static_cast<int>(panels.size()) >= opt.max_intervals || heap.empty()) {
            res.converged = false;
            break;
        }
        const auto [m, idx] = heap.top();
        heap.pop();
        Panel old = panels[idx];
        const double mid = 0.5 * (old.a + old.b);
        if (!(mid > old.a && mid < old.b) || m == 0.0) {
            // Panel cannot be refined further in floating point.
            if (heap.empty()) {
                res.converged = false;
                break;
            }
            continue;
        }
        for (int c = 0; c < dim; ++c) {
            res.value[c] -= old.val[c];
            res.error[c] -= old.err[c];
        }
        panels[idx].val.assign(dim, 0.0);
        panels[idx].err.assign(dim, 0.0);
        add_panel(old.a, mid);
        add_panel(mid, old.b);
    }
    // Recompute sums to remove drift from incremental updates.
    std::fill(res.value.begin(), res.value.end(), 0.0);
    std::fill(res.error.begin(), res.error.end(), 0.0);
    for (const auto& p : panels)
        for (int c = 0; c < dim; ++c) {
            res.value[c] += p.val[c];
            res.error[c] += p.err[c];
        }
    return res;
}

AdaptiveResult integrate_graded(const VecIntegrand& f, int dim, double a, double p, const AdaptiveOptions& opt) {
    require(a > 0.0 && p >= 1.0, ErrorCode::invalid_argument, "graded map needs a > 0 and p >= 1");
    std::vector<double> tmp(dim);
    VecIntegrand g = [&](double u, double* out) {
        const double theta = a * std::pow(u, p);
        const double jac = a * p * std::pow(u, p - 1.0);
        f(theta, tmp.data());
        for (int c = 0; c < dim; ++c) out[c] = jac * tmp[c];
    };
    return integrate_adaptive(g, dim, {0.0, 0.25, 0.5, 1.0}, opt);
}

void accumulate(AdaptiveResult& into, const AdaptiveResult& part) {
    if (into.value.empty()) {
        into = part;
        return;
    }
    for (std::size_t c = 0; c < into.value.size(); ++c) {
        into.value[c] += part.value[c];
        into.error[c] += part.error[c];
    }
    into.evaluations += part.evaluations;
    into.converged = into.converged && part.converged;
}

namespace {

std::vector<double> uniform_breaks(double a, double b, int panels) {
    std::vector<double> out;
    panels = std::max(panels, 1);
    for (int k = 0; k <= panels; ++k) out.push_back(a + (b - a) * k / panels);
    return out;
}

// Nested outer integral whose integrand is itself an adaptive integral; inner errors ride along as extra
// components and are added to the outer error.
AdaptiveResult nested(int dim, const std::vector<double>& outer_breaks, const AdaptiveOptions& outer_opt,
                      const std::function<AdaptiveResult(double)>& inner, const std::function<double(double)>& weight,
                      const std::function<double(double)>& remap = nullptr, const std::function<double(double)>& jac = nullptr) {
    AdaptiveOptions o = outer_opt;
    std::vector<bool> ctrl = outer_opt.control;
    if (ctrl.empty()) ctrl.assign(dim, false), ctrl[0] = true;
    ctrl.resize(2 * dim, false);
    o.control = ctrl;
    if (!o.scale_of.empty())
        for (int c = dim; c < 2 * dim; ++c) o.scale_of.push_back(c);
    long evals = 0;
    bool inner_ok = true;
    VecIntegrand g = [&](double u, double* out) {
        const double x = remap ? remap(u) : u;
        const double j = (jac ? jac(u) : 1.0) * weight(x);
        AdaptiveResult r = inner(x);
        evals += r.evaluations;
        inner_ok = inner_ok && r.converged;
        for (int c = 0; c < dim; ++c) {
            out[c] = j * r.value[c];
            out[dim + c] = std::abs(j) * r.error[c];
        }
    };
    AdaptiveResult r = integrate_adaptive(g, 2 * dim, outer_breaks, o);
    AdaptiveResult res;
    res.value.assign(r.value.begin(), r.value.begin() + dim);
    res.error.resize(dim);
    for (int c = 0; c < dim; ++c) res.error[c] = r.error[c] + r.value[dim + c];
    res.evaluations = evals;
    res.converged = r.converged && inner_ok;
    return res;
}

AdaptiveResult circle_integral(int dim, const std::function<void(double, double*)>& f, int panels,
                               const AdaptiveOptions& opt) {
    return integrate_adaptive(f, dim, uniform_breaks(0.0, 2.0 * M_PI, panels), opt);
}

}  // namespace

AdaptiveResult integrate_nested(int dim, const std::vector<double>& outer_breaks, const AdaptiveOptions& opt,
                                const std::function<AdaptiveResult(double)>& inner,
                                const std::function<double(double)>& weight) {
    return nested(dim, outer_breaks, opt, inner, weight);
}

AdaptiveResult integrate_sphere(int n, int dim, const DirIntegrand& f, const SphereOptions& opt) {
    require(n >= 1 && n <= 3, ErrorCode::invalid_argument, "sphere integrals need n in {1,2,3}");
    if (n == 1) {
        AdaptiveResult res;
        res.value.assign(dim, 0.0);
        res.error.assign(dim, 0.0);
        std::vector<double> buf(dim);
        for (double sgn : {1.0, -1.0}) {
            f(Vec{sgn}, buf.data());
            for (int c = 0; c < dim; ++c) res.value[c] += buf[c];
        }
        res.evaluations = 2;
        return res;
    }
    if (n == 2) {
        std::vector<double> breaks = uniform_breaks(0.0, 2.0 * M_PI, opt.panels);
        for (double a : opt.extra_angles) {
            const double w = a - 2.0 * M_PI * std::floor(a / (2.0 * M_PI));
            if (w > 0.0 && w < 2.0 * M_PI) breaks.push_back(w);
        }
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-14; }),
                     breaks.end());
        return integrate_adaptive([&](double th, double* out) { f(Vec{std::cos(th), std::sin(th)}, out); }, dim,
                                  breaks, opt.adaptive);
    }
    auto inner = [&](double th) {
        const double st = std::sin(th), ct = std::cos(th);
        return circle_integral(
            dim, [&](double ps, double* out) { f(Vec{st * std::cos(ps), st * std::sin(ps), ct}, out); }, opt.panels,
            opt.adaptive);
    };
    return nested(dim, uniform_breaks(0.0, M_PI, std::max(2, opt.panels / 2)), opt.adaptive, inner,
                  [](double th) { return std::sin(th); });
}

AdaptiveResult integrate_hemisphere(const Vec& pole, int dim, const DirIntegrand& f, const SphereOptions& opt) {
    const int n = pole.dim();
    require(n >= 1 && n <= 3, ErrorCode::invalid_argument, "sphere integrals need n in {1,2,3}");
    const Vec N = pole.normalized();
    if (n == 1) {
        AdaptiveResult res;
        res.value.assign(dim, 0.0);
        res.error.assign(dim, 0.0);
        f(N, res.value.data());
        res.evaluations = 1;
        return res;
    }
    const auto tangents = orthonormal_complement(N);
    const double p = std::max(1.0, opt.grading);
    const double w = std::min(opt.graded_width, 0.25 * M_PI);
    if (n == 2) {
        const Vec T = tangents[0];
        auto at = [&](double th, double* out) { f(std::cos(th) * T + std::sin(th) * N, out); };
        AdaptiveResult res;
        if (p > 1.0) {
            accumulate(res, integrate_graded(at, dim, w, p, opt.adaptive));
            accumulate(res, integrate_graded([&](double th, double* out) { at(M_PI - th, out); }, dim, w, p,
                                             opt.adaptive));
            accumulate(res, integrate_adaptive(at, dim, uniform_breaks(w, M_PI - w, std::max(2, opt.panels / 2)),
                                               opt.adaptive));
        } else {
            accumulate(res, integrate_adaptive(at, dim, uniform_breaks(0.0, M_PI, std::max(2, opt.panels / 2)),
                                               opt.adaptive));
        }
        return res;
    }
    const Vec T1 = tangents[0], T2 = tangents[1];
    // Elevation phi above the equator; surface weight cos(phi).
    auto inner = [&](double phi) {
        const double cp = std::cos(phi), sp = std::sin(phi);
        return circle_integral(
            dim, [&](double ps, double* out) { f(cp * (std::cos(ps) * T1 + std::sin(ps) * T2) + sp * N, out); },
            opt.panels, opt.adaptive);
    };
    auto cosw = [](double phi) { return std::cos(phi); };
    AdaptiveResult res;
    if (p > 1.0) {
        accumulate(res, nested(dim, {0.0, 0.25, 0.5, 1.0}, opt.adaptive, inner, cosw,
                               [&](double u) { return w * std::pow(u, p); },
                               [&](double u) { return w * p * std::pow(u, p - 1.0); }));
        accumulate(res, nested(dim, uniform_breaks(w, 0.5 * M_PI, 3), opt.adaptive, inner, cosw));
    } else {
        accumulate(res, nested(dim, uniform_breaks(0.0, 0.5 * M_PI, 4), opt.adaptive, inner, cosw));
    }
    return res;
}

}  // namespace fracperim
