#include "fracperim/singular_integrals.hpp"

#include <algorithm>
#include <cmath>

#include "fracperim/error.hpp"
#include "fracperim/thresholds.hpp"

namespace fracperim {

namespace {

bool near(const Vec& a, const Vec& b) { return (a - b).norm() <= eps_geo(a) * 8.0; }

double unit_mass(int n, double R, double s) { return omega(n) * std::pow(R, -s) / s; }

std::optional<double> closed_exterior_mass(const SetSpec& E, const Vec& q, double R, double s) {
    const int n = E.dim();
    const auto& v = E.node().v;
    if (std::holds_alternative<SetSpec::Empty>(v)) return 0.0;
    if (std::holds_alternative<SetSpec::Full>(v)) return unit_mass(n, R, s);
    if (const auto b = E.bounding_radius(); b && q.norm() + *b <= R) return 0.0;
    if (const auto* h = std::get_if<SetSpec::HalfSpace>(&v)) {
        if (std::abs(h->normal.dot(q) - h->offset) <= eps_geo(q)) return 0.5 * unit_mass(n, R, s);
        return std::nullopt;
    }
    if (const auto* c = std::get_if<SetSpec::CapCone>(&v)) {
        if (near(c->apex, q)) return *cone_opening(E) * std::pow(R, -s) / s;
        return std::nullopt;
    }
    if (const auto* c = std::get_if<SetSpec::AngleBoxCone>(&v)) {
        if (near(c->apex, q)) return *cone_opening(E) * std::pow(R, -s) / s;
        return std::nullopt;
    }
    if (const auto* c = std::get_if<SetSpec::Complement>(&v)) {
        if (auto m = closed_exterior_mass(c->child, q, R, s)) return unit_mass(n, R, s) - *m;
        return std::nullopt;
    }
    if (const auto* t = std::get_if<SetSpec::Translate>(&v)) return closed_exterior_mass(t->child, q - t->shift, R, s);
    if (const auto* r = std::get_if<SetSpec::Rotate>(&v))
        return closed_exterior_mass(r->child, r->rotation.transpose_times(q), R, s);
    if (const auto* sc = std::get_if<SetSpec::Scale>(&v)) {
        if (auto m = closed_exterior_mass(sc->child, q / sc->factor, R / sc->factor, s))
            return std::pow(sc->factor, -s) * *m;
        return std::nullopt;
    }
    return std::nullopt;
}

SphereOptions sphere_options(const QuadratureConfig& cfg, double grading) {
    SphereOptions so;
    so.adaptive.rel_tol = cfg.rel_tol;
    so.adaptive.abs_tol = cfg.abs_tol;
    so.adaptive.max_intervals = cfg.max_subdiv;
    so.adaptive.order = cfg.angular_order;
    so.panels = cfg.angular_panels;
    so.grading = grading;
    return so;
}

Vec default_pole(const SetSpec& E, const Vec& q) {
    if (auto nrm = E.boundary_normal(q)) return -*nrm;
    return Vec::unit(q.dim(), q.dim() - 1);
}

// Profile with the sign forced to `start` on [0, cut).
RayProfile recut(const RayProfile& p, double cut) {
    RayProfile out;
    out.start = p.start;
    int sign = p.start;
    std::size_t k = 0;
    for (; k < p.changes.size() && p.changes[k].first <= cut; ++k) sign = p.changes[k].second;
    if (sign != p.start) out.changes.emplace_back(cut, sign);
    for (; k < p.changes.size(); ++k) out.changes.push_back(p.changes[k]);
    return out;
}

}  // namespace

std::optional<double> cone_opening(const SetSpec& E) {
    const int n = E.dim();
    const auto& v = E.node().v;
    if (const auto* c = std::get_if<SetSpec::CapCone>(&v)) {
        if (n == 2) return 2.0 * c->half_angle;
        if (n == 3) return 2.0 * M_PI * (1.0 - std::cos(c->half_angle));
        return 1.0;
    }
    if (const auto* c = std::get_if<SetSpec::AngleBoxCone>(&v)) {
        const double daz = c->az_hi - c->az_lo;
        if (n == 2) return daz;
        return daz * (std::sin(c->el_hi) - std::sin(c->el_lo));
    }
    return std::nullopt;
}

RayProfile ray_profile(const SetSpec& E, const Vec& q, const Vec& d, double cutoff, std::optional<int> start,
                       const RayOptions& opt) {
    const IntervalSet iv = E.ray(q, d, cutoff, opt);
    std::vector<std::pair<double, int>> actual;
    const auto& parts = iv.parts();
    int s0 = (!parts.empty() && parts.front().lo <= cutoff) ? -1 : 1;
    for (const auto& part : parts) {
        if (part.lo > cutoff) actual.emplace_back(part.lo, -1);
        if (std::isfinite(part.hi)) actual.emplace_back(part.hi, 1);
    }
    RayProfile p;
    p.start = start.value_or(s0);
    // A prescribed start comes from the tangent plane. A leading opposite segment ending within the rounding band
    // of a near-tangent ray is noise, not a crossing below the cutoff.
    if (start && s0 != *start && !actual.empty() && actual.front().first <= 1e-7 * (1.0 + q.norm())) {
        s0 = *start;
        actual.erase(actual.begin());
    }
    int cur = p.start;
    if (s0 != cur) {
        p.changes.emplace_back(cutoff, s0);
        cur = s0;
    }
    for (const auto& [t, sg] : actual)
        if (sg != cur) {
            p.changes.emplace_back(t, sg);
            cur = sg;
        }
    return p;
}

double profile_tail(const RayProfile& p, double rho, double s) {
    double acc = 0.0, a = 0.0;
    int sign = p.start;
    for (const auto& [t, sg] : p.changes) {
        if (t > rho) acc += sign * radial_weight(std::max(a, rho), t, s);
        a = t;
        sign = sg;
    }
    acc += sign * radial_weight(std::max(a, rho), kInf, s);
    return acc;
}

double profile_finite_part(const RayProfile& p, double s) {
    if (p.changes.empty()) return 0.0;
    double acc = -p.start * std::pow(p.changes.front().first, -s) / s;
    for (std::size_t k = 0; k < p.changes.size(); ++k) {
        const double hi = k + 1 < p.changes.size() ? p.changes[k + 1].first : kInf;
        acc += p.changes[k].second * radial_weight(p.changes[k].first, hi, s);
    }
    return acc;
}

IntegralEstimate exterior_mass(const SetSpec& E, const Vec& q, double R, double s, const QuadratureConfig& cfg) {
    require(R > 0.0, ErrorCode::invalid_argument, "radius must be positive");
    require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "s must lie in (0,1)");
    require(q.dim() == E.dim(), ErrorCode::dimension_mismatch, "point dimension");
    IntegralEstimate out;
    if (auto m = cfg.closed_forms ? closed_exterior_mass(E, q, R, s) : std::nullopt) {
        out.value = *m;
        out.route = "closed_form";
        return out;
    }
    const int n = E.dim();
    DirIntegrand f = [&](const Vec& d, double* o) { o[0] = radial_mass(E.ray(q, d, R, cfg.rays), R, s); };
    SphereOptions so = sphere_options(cfg, 1.0);
    so.extra_angles = E.asymptotic_angles();
    const AdaptiveResult r = integrate_sphere(n, 1, f, so);
    out.value = std::max(0.0, r.value[0]);
    out.error = r.error[0];
    out.converged = r.converged;
    out.route = "quadrature";
    out.evaluations = r.evaluations;
    return out;
}

IntegralEstimate tail_integral_estimate(const SetSpec& E, const Vec& q, double R, double s, bool signed_version,
                                        const QuadratureConfig& cfg) {
    IntegralEstimate m = exterior_mass(E, q, R, s, cfg);
    if (!signed_version) return m;
    m.value = unit_mass(E.dim(), R, s) - 2.0 * m.value;
    m.error *= 2.0;
    return m;
}

double tail_integral(const SetSpec& E, const Vec& q, double R, double s, bool signed_version,
                     const QuadratureConfig& cfg) {
    return tail_integral_estimate(E, q, R, s, signed_version, cfg).value;
}

IntegralEstimate truncated_integral(const SetSpec& E, const Vec& q, double s, double rho,
                                    const QuadratureConfig& cfg) {
    require(rho > 0.0, ErrorCode::invalid_argument, "cutoff radius must be positive");
    require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "s must lie in (0,1)");
    require(q.dim() == E.dim(), ErrorCode::dimension_mismatch, "point dimension");
    const double base = std::pow(rho, -s) / s;
    DirIntegrand f = [&](const Vec& d, double* o) {
        const double a = base - 2.0 * radial_mass(E.ray(q, d, rho, cfg.rays), rho, s);
        const double b = base - 2.0 * radial_mass(E.ray(q, -d, rho, cfg.rays), rho, s);
        o[0] = a + b;
        o[1] = std::abs(a) + std::abs(b);
    };
    SphereOptions so = sphere_options(cfg, 1.0);
    so.adaptive.scale_of = {1, 1};
    const AdaptiveResult r = integrate_hemisphere(default_pole(E, q), 2, f, so);
    IntegralEstimate out;
    out.value = r.value[0];
    out.error = r.error[0];
    out.converged = r.converged;
    out.route = "quadrature";
    out.evaluations = r.evaluations;
    return out;
}

PVEstimate pv_curvature_integral(const SetSpec& E, const Vec& q, double s, const QuadratureConfig& cfg) {
    require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "s must lie in (0,1)");
    require(q.dim() == E.dim(), ErrorCode::dimension_mismatch, "point dimension");
    const int n = E.dim();
    PVEstimate out;
    out.rho = cfg.rho_schedule();
    for (std::size_t k = 1; k < out.rho.size(); ++k)
        require(out.rho[k] < out.rho[k - 1] && out.rho[k] > 0.0, ErrorCode::invalid_argument,
                "rho schedule must be positive and strictly decreasing");
    const int L = static_cast<int>(out.rho.size());
    const auto nrm = E.boundary_normal(q);
    const Vec pole = default_pole(E, q);
    const double cut = cfg.pv_inner_cutoff * (1.0 + q.norm());
    const double cut2 = 8.0 * cut;

    // 0: paired finite part, 1: its absolute value, 2: finite part with the cutoff raised, 3: start-side defect,
    // 4..: truncated values along the schedule.
    const int dim = 4 + L;
    DirIntegrand f = [&](const Vec& d, double* o) {
        std::optional<int> sp, sm;
        if (nrm) {
            sp = d.dot(*nrm) > 0.0 ? 1 : -1;
            sm = -*sp;
        }
        const RayProfile pp = ray_profile(E, q, d, cut, sp, cfg.rays);
        const RayProfile pm = ray_profile(E, q, -d, cut, sm, cfg.rays);
        const double fp = profile_finite_part(pp, s), fm = profile_finite_part(pm, s);
        o[0] = fp + fm;
        o[1] = std::abs(fp) + std::abs(fm);
        o[2] = profile_finite_part(recut(pp, cut2), s) + profile_finite_part(recut(pm, cut2), s);
        o[3] = 0.5 * std::abs(pp.start + pm.start);
        for (int k = 0; k < L; ++k) o[4 + k] = profile_tail(pp, out.rho[k], s) + profile_tail(pm, out.rho[k], s);
    };
    const double grading = cfg.radial_grading > 0.0 ? cfg.radial_grading : std::min(16.0, 1.0 / (1.0 - s));
    SphereOptions so = sphere_options(cfg, grading);
    so.adaptive.control.assign(dim, false);
    so.adaptive.control[0] = true;
    so.adaptive.scale_of.resize(dim);
    for (int c = 0; c < dim; ++c) so.adaptive.scale_of[c] = c;
    so.adaptive.scale_of[0] = 1;
    if (L >= 2) {
        so.adaptive.control[4 + L - 1] = true;
        so.adaptive.control[4 + L - 2] = true;
        so.adaptive.scale_of[4 + L - 1] = 1;
        so.adaptive.scale_of[4 + L - 2] = 1;
    }
    const AdaptiveResult r = integrate_hemisphere(pole, dim, f, so);
    out.evaluations = r.evaluations;
    out.schedule.assign(r.value.begin() + 4, r.value.end());
    out.sign_defect = r.value[3];
    out.quadrature_error = r.error[0];
    const double amp = 1.0 / (std::pow(8.0, 1.0 - s) - 1.0);
    out.cutoff_error = std::abs(r.value[0] - r.value[2]) * amp + r.error[2] * amp;

    const bool regular = out.sign_defect <= 1e-12 * omega(n);
    if (!regular) {
        // Start sides do not cancel: the truncated values diverge as rho -> 0.
        out.value = out.schedule.empty() ? r.value[0] : out.schedule.back();
        out.error_estimate = out.schedule.size() >= 2
                                 ? std::abs(out.schedule.back() - out.schedule[out.schedule.size() - 2])
                                 : std::abs(out.value);
        out.converged = false;
        return out;
    }
    // Directions whose first crossing falls below the cutoff lose a band scaling like cut^{1-s}; extrapolate it.
    out.value = r.value[0] + (r.value[0] - r.value[2]) * amp;
    double sched_tol = 0.0;
    if (L >= 2) {
        const double ratio = out.rho[L - 1] / out.rho[L - 2];
        const double rr = std::pow(ratio, 1.0 - s);
        const double rich = (out.schedule[L - 1] - rr * out.schedule[L - 2]) / (1.0 - rr);
        out.schedule_mismatch = std::abs(rich - out.value);
        sched_tol = (r.error[4 + L - 1] + rr * r.error[4 + L - 2]) / (1.0 - rr);
    }
    out.error_estimate = out.quadrature_error + out.cutoff_error + out.schedule_mismatch;
    const double tol = std::max(cfg.rel_tol * (std::abs(out.value) + 1.0),
                                10.0 * (out.quadrature_error + out.cutoff_error) + sched_tol);
    out.converged = r.converged && out.schedule_mismatch <= tol;
    return out;
}

}  // namespace fracperim
