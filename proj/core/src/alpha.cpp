#include "fracperim/alpha.hpp"

#include <algorithm>
#include <cmath>

#include "fracperim/error.hpp"
#include "fracperim/kernels.hpp"
#include "fracperim/thresholds.hpp"

namespace fracperim {

namespace {

bool is_bounded(const SetSpec& E) { return E.bounding_radius().has_value(); }

bool is_cobounded(const SetSpec& E) {
    const auto* c = std::get_if<SetSpec::Complement>(&E.node().v);
    return c && is_bounded(c->child);
}

}  // namespace

std::optional<ClosedAlpha> alpha_closed_form(const SetSpec& E) {
    const int n = E.dim();
    const double w = omega(n);
    const auto& v = E.node().v;
    if (std::holds_alternative<SetSpec::Full>(v)) return ClosedAlpha{w, "full"};
    if (is_bounded(E)) return ClosedAlpha{0.0, "bounded"};
    if (std::holds_alternative<SetSpec::HalfSpace>(v)) return ClosedAlpha{0.5 * w, "half_space"};
    if (auto o = cone_opening(E)) return ClosedAlpha{*o, "cone"};
    if (const auto* g = std::get_if<SetSpec::Supergraph>(&v)) {
        const GrowthTag& tag = g->graph.growth();
        switch (tag.kind) {
            case GrowthTag::Kind::bounded: return ClosedAlpha{0.5 * w, "bounded_graph"};
            case GrowthTag::Kind::sublinear: return ClosedAlpha{0.5 * w, "sublinear_graph"};
            case GrowthTag::Kind::cubic_like: return ClosedAlpha{0.5 * w, "cubic_like_graph"};
            case GrowthTag::Kind::superlinear: return ClosedAlpha{0.0, "superlinear_graph"};
            case GrowthTag::Kind::linear_cone:
                return ClosedAlpha{0.5 * w - tag.cone_measure * G_power(n, tag.slope), "linear_cone_graph"};
            case GrowthTag::Kind::custom: return std::nullopt;
        }
    }
    if (const auto* c = std::get_if<SetSpec::Complement>(&v)) {
        if (auto a = alpha_closed_form(c->child)) return ClosedAlpha{w - a->value, "complement_of_" + a->family};
        return std::nullopt;
    }
    if (const auto* t = std::get_if<SetSpec::Translate>(&v)) return alpha_closed_form(t->child);
    if (const auto* r = std::get_if<SetSpec::Rotate>(&v)) return alpha_closed_form(r->child);
    if (const auto* sc = std::get_if<SetSpec::Scale>(&v)) return alpha_closed_form(sc->child);
    if (const auto* u = std::get_if<SetSpec::Union>(&v)) {
        std::vector<const SetSpec*> rest;
        for (const auto& ch : u->children)
            if (!is_bounded(ch)) rest.push_back(&ch);
        if (rest.size() == 1) return alpha_closed_form(*rest.front());
        return std::nullopt;
    }
    if (const auto* in = std::get_if<SetSpec::Intersection>(&v)) {
        std::vector<const SetSpec*> rest;
        for (const auto& ch : in->children) {
            if (is_bounded(ch)) return ClosedAlpha{0.0, "bounded"};
            if (!is_cobounded(ch)) rest.push_back(&ch);
        }
        if (rest.empty()) return ClosedAlpha{w, "full"};
        if (rest.size() == 1) return alpha_closed_form(*rest.front());
        return std::nullopt;
    }
    return std::nullopt;
}

IntegralEstimate alpha_s_estimate(const SetSpec& E, const Vec& q, double r, double s, const QuadratureConfig& cfg) {
    require(r > 0.0, ErrorCode::invalid_argument, "alpha_s needs r > 0");
    IntegralEstimate m = exterior_mass(E, q, r, s, cfg);
    m.value = std::clamp(m.value, 0.0, omega(E.dim()) * std::pow(r, -s) / s);
    return m;
}

double alpha_s(const SetSpec& E, const Vec& q, double r, double s, const QuadratureConfig& cfg) {
    return alpha_s_estimate(E, q, r, s, cfg).value;
}

std::vector<double> default_alpha_grid() {
    std::vector<double> g;
    for (double s = 0.2; s > 0.003; s *= 0.5) g.push_back(s);
    return g;
}

AlphaEstimate alpha_limit(const SetSpec& E, const Vec& q, double r, const QuadratureConfig& cfg,
                          const std::vector<double>& s_grid) {
    require(s_grid.size() >= 2, ErrorCode::invalid_argument, "s grid needs at least two points");
    for (std::size_t k = 1; k < s_grid.size(); ++k)
        require(s_grid[k] < s_grid[k - 1], ErrorCode::invalid_argument, "s grid must be decreasing");
    AlphaEstimate out;
    out.s_grid = s_grid;
    for (double s : s_grid) {
        const IntegralEstimate a = alpha_s_estimate(E, q, r, s, cfg);
        out.alpha_values.push_back(a.value);
        out.scaled_values.push_back(s * a.value);
        out.scaled_errors.push_back(s * a.error);
        out.converged = out.converged && a.converged;
    }
    const std::size_t K = s_grid.size();
    auto richardson = [&](std::size_t k) {
        const double ratio = s_grid[k] / s_grid[k - 1];
        return (out.scaled_values[k] - ratio * out.scaled_values[k - 1]) / (1.0 - ratio);
    };
    auto rich_err = [&](std::size_t k) {
        const double ratio = s_grid[k] / s_grid[k - 1];
        return (out.scaled_errors[k] + ratio * out.scaled_errors[k - 1]) / (1.0 - ratio);
    };
    const double LK = richardson(K - 1);
    out.extrapolated_limit = LK;
    double bar = 3.0 * rich_err(K - 1);
    if (K >= 3) bar += std::abs(LK - richardson(K - 2));
    out.error_bar = bar;

    // Oscillation: repeated sign changes of successive differences that do not shrink.
    if (K >= 4) {
        int flips = 0;
        double dmax = 0.0;
        for (std::size_t k = 1; k < K; ++k) {
            const double d = out.scaled_values[k] - out.scaled_values[k - 1];
            dmax = std::max(dmax, std::abs(d));
            if (k >= 2) {
                const double dp = out.scaled_values[k - 1] - out.scaled_values[k - 2];
                const double noise = 4.0 * (out.scaled_errors[k] + out.scaled_errors[k - 1] + out.scaled_errors[k - 2]);
                if (d * dp < 0.0 && std::abs(d) > noise && std::abs(dp) > noise) ++flips;
            }
        }
        const double dlast = std::abs(out.scaled_values[K - 1] - out.scaled_values[K - 2]);
        if (flips >= 2 && dlast > 0.5 * dmax) {
            const auto first = out.scaled_values.end() - std::min<std::ptrdiff_t>(4, K);
            out.limsup_liminf = std::make_pair(*std::max_element(first, out.scaled_values.end()),
                                               *std::min_element(first, out.scaled_values.end()));
        }
    }
    if (auto c = alpha_closed_form(E)) {
        out.closed_form = c->value;
        out.family = c->family;
    }
    return out;
}

std::string to_string(AlphaRelation rel) {
    switch (rel) {
        case AlphaRelation::monotone: return "monotone";
        case AlphaRelation::additive: return "additive";
        case AlphaRelation::rigid_motion: return "rigid_motion";
        case AlphaRelation::scaling: return "scaling";
        case AlphaRelation::symm_diff: return "symm_diff";
    }
    return "unknown";
}

AlphaRelation alpha_relation_from_string(const std::string& name) {
    for (auto r : {AlphaRelation::monotone, AlphaRelation::additive, AlphaRelation::rigid_motion,
                   AlphaRelation::scaling, AlphaRelation::symm_diff})
        if (to_string(r) == name) return r;
    fail(ErrorCode::invalid_argument, "unknown alpha relation: " + name);
}

CalculusReport alpha_calculus_check(const SetSpec& E, const SetSpec& F, AlphaRelation relation,
                                    const QuadratureConfig& cfg, int samples, std::uint64_t seed) {
    require(!F.valid() || E.dim() == F.dim(), ErrorCode::dimension_mismatch, "sets must share a dimension");
    const int n = E.dim();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0), rdist(0.5, 2.0), sdist(0.05, 0.5), ldist(0.5, 4.0),
        adist(0.0, 2.0 * M_PI);
    CalculusReport rep;
    rep.relation = relation;
    const SetSpec sym = relation == AlphaRelation::symm_diff ? SetSpec::unite({E.minus(F), F.minus(E)}) : E;
    const SetSpec uni = relation == AlphaRelation::additive ? SetSpec::unite({E, F}) : E;
    for (int k = 0; k < samples; ++k) {
        CalculusSample cs;
        cs.q = Vec(n);
        for (int i = 0; i < n; ++i) cs.q[i] = unit(rng);
        cs.r = rdist(rng);
        cs.s = sdist(rng);
        cs.lambda = ldist(rng);
        const double tol = cfg.rel_tol;
        bool equality = true;
        switch (relation) {
            case AlphaRelation::monotone: {
                const auto a = alpha_s_estimate(E, cs.q, cs.r, cs.s, cfg), b = alpha_s_estimate(F, cs.q, cs.r, cs.s, cfg);
                cs.lhs = a.value;
                cs.rhs = b.value;
                cs.slack = a.error + b.error + tol * std::abs(b.value);
                equality = false;
                break;
            }
            case AlphaRelation::additive: {
                const auto u = alpha_s_estimate(uni, cs.q, cs.r, cs.s, cfg);
                const auto a = alpha_s_estimate(E, cs.q, cs.r, cs.s, cfg), b = alpha_s_estimate(F, cs.q, cs.r, cs.s, cfg);
                cs.lhs = u.value;
                cs.rhs = a.value + b.value;
                cs.slack = u.error + a.error + b.error + tol * std::abs(cs.rhs);
                break;
            }
            case AlphaRelation::rigid_motion: {
                Mat R = n == 2 ? Mat::rotation2(adist(rng)) : n == 3 ? Mat::rotation3(Vec{unit(rng), unit(rng), unit(rng)}.normalized(), adist(rng)) : Mat::identity(n);
                Vec shift(n);
                for (int i = 0; i < n; ++i) shift[i] = unit(rng);
                const SetSpec moved = E.rotated(R).translated(shift);
                const auto a = alpha_s_estimate(E, cs.q, cs.r, cs.s, cfg);
                const auto b = alpha_s_estimate(moved, R * cs.q + shift, cs.r, cs.s, cfg);
                cs.lhs = a.value;
                cs.rhs = b.value;
                cs.slack = a.error + b.error + tol * std::max(std::abs(a.value), std::abs(b.value));
                break;
            }
            case AlphaRelation::scaling: {
                const SetSpec big = E.scaled(cs.lambda);
                const auto a = alpha_s_estimate(big, cs.q, cs.r, cs.s, cfg);
                const auto b = alpha_s_estimate(E, cs.q / cs.lambda, cs.r / cs.lambda, cs.s, cfg);
                cs.lhs = a.value;
                cs.rhs = std::pow(cs.lambda, -cs.s) * b.value;
                cs.slack = a.error + std::pow(cs.lambda, -cs.s) * b.error + tol * std::max(std::abs(cs.lhs), std::abs(cs.rhs));
                break;
            }
            case AlphaRelation::symm_diff: {
                const auto a = alpha_s_estimate(E, cs.q, cs.r, cs.s, cfg), b = alpha_s_estimate(F, cs.q, cs.r, cs.s, cfg);
                const auto d = alpha_s_estimate(sym, cs.q, cs.r, cs.s, cfg);
                cs.lhs = std::abs(a.value - b.value);
                cs.rhs = d.value;
                cs.slack = a.error + b.error + d.error + tol * std::abs(d.value);
                equality = false;
                break;
            }
        }
        const double gap = equality ? std::abs(cs.lhs - cs.rhs) : std::max(0.0, cs.lhs - cs.rhs);
        rep.max_violation = std::max(rep.max_violation, std::max(0.0, gap - cs.slack));
        const double scale = std::max({std::abs(cs.lhs), std::abs(cs.rhs), 1e-300});
        rep.max_relative_gap = std::max(rep.max_relative_gap, gap / scale);
        rep.samples.push_back(cs);
    }
    rep.pass = rep.max_violation == 0.0;
    if (relation == AlphaRelation::symm_diff) {
        const Vec origin(n);
        const AlphaEstimate la = alpha_limit(E, origin, 1.0, cfg), lb = alpha_limit(F, origin, 1.0, cfg);
        rep.limits = std::make_pair(la.extrapolated_limit, lb.extrapolated_limit);
        rep.limit_tolerance = la.error_bar + lb.error_bar + 1e-9 * omega(n);
        rep.pass = rep.pass && std::abs(la.extrapolated_limit - lb.extrapolated_limit) <= rep.limit_tolerance;
    }
    return rep;
}

DualityReport complement_duality_check(const SetSpec& E, const Vec& q, double r, const QuadratureConfig& cfg) {
    const AlphaEstimate a = alpha_limit(E, q, r, cfg), b = alpha_limit(E.complement(), q, r, cfg);
    DualityReport rep;
    rep.alpha_E = a.extrapolated_limit;
    rep.alpha_CE = b.extrapolated_limit;
    rep.error_bar = a.error_bar + b.error_bar;
    rep.omega_n = omega(E.dim());
    rep.pass = std::abs(rep.alpha_E + rep.alpha_CE - rep.omega_n) <= 2.0 * rep.error_bar + 1e-9 * rep.omega_n;
    return rep;
}

}  // namespace fracperim
