#include "fracperim/threshold_checks.hpp"

#include <algorithm>
#include <cmath>

#include "fracperim/error.hpp"
#include "fracperim/singular_integrals.hpp"
#include "fracperim/thresholds.hpp"

namespace fracperim {

namespace {

void validate_witness(const SetSpec& E, const Vec& q, const TangentBall& w) {
    const int n = E.dim();
    require(w.center.dim() == n, ErrorCode::dimension_mismatch, "witness dimension");
    require(w.radius > 0.0, ErrorCode::precondition_violated, "witness radius must be positive");
    require(std::abs((q - w.center).norm() - w.radius) <= 1e-9 * (1.0 + w.radius), ErrorCode::precondition_violated,
            "witness ball must touch the boundary at q");
    // Open ball sampled on shells avoiding the tangency point.
    const int K = 24;
    for (int a = 1; a <= 8; ++a) {
        const double rr = w.radius * a / 8.0 * (1.0 - 1e-9);
        for (int i = 0; i < K; ++i)
            for (int j = 0; j < (n == 3 ? K / 2 : 1); ++j) {
                Vec d(n);
                const double th = 2.0 * M_PI * i / K;
                if (n == 1) d = Vec{i % 2 ? 1.0 : -1.0};
                else if (n == 2) d = Vec{std::cos(th), std::sin(th)};
                else {
                    const double ph = M_PI * (j + 0.5) / (K / 2);
                    d = Vec{std::sin(ph) * std::cos(th), std::sin(ph) * std::sin(th), std::cos(ph)};
                }
                const Vec x = w.center + d * rr;
                if ((x - q).norm() < 1e-6 * w.radius) continue;
                require(E.contains(x) != Membership::inside, ErrorCode::precondition_violated,
                        "witness ball intersects E");
            }
    }
}

}  // namespace

PositiveCurvatureReport positive_curvature_check(const SetSpec& E, const Vec& q, const TangentBall& witness,
                                                 double alpha_bar, double s, double sigma,
                                                 const QuadratureConfig& cfg) {
    const int n = E.dim();
    require(s > 0.0 && s <= sigma && sigma < 1.0, ErrorCode::invalid_argument, "need 0 < s <= sigma < 1");
    PositiveCurvatureReport rep;
    rep.s = s;
    rep.sigma = sigma;
    rep.beta = beta_threshold(n, alpha_bar);
    require(rep.beta > 0.0, ErrorCode::threshold_exceeded, "alpha_bar >= omega_n/2: no positive lower bound");
    rep.delta_sigma = delta_s(sigma, alpha_bar, n);
    require(witness.radius >= rep.delta_sigma * (1.0 - 1e-12), ErrorCode::precondition_violated,
            "witness radius is below delta_sigma");
    validate_witness(E, q, witness);
    rep.bound = rep.beta / s;
    const auto sched = cfg.rho_schedule();
    const std::size_t take = std::min<std::size_t>(4, sched.size());
    bool ok = true;
    rep.min_value = kInf;
    for (std::size_t k = sched.size() - take; k < sched.size(); ++k) {
        const IntegralEstimate t = truncated_integral(E, q, s, sched[k], cfg);
        rep.rho.push_back(sched[k]);
        rep.values.push_back(t.value);
        rep.errors.push_back(t.error);
        rep.min_value = std::min(rep.min_value, t.value);
        ok = ok && (t.value + t.error >= rep.bound);
    }
    rep.pass = ok;
    return rep;
}

RootReport sign_change_root(const SetSpec& E, const Vec& p, double s_lo, double s_hi, const QuadratureConfig& cfg,
                            double tol_s) {
    require(0.0 < s_lo && s_lo < s_hi && s_hi < 1.0, ErrorCode::invalid_argument, "bracket must satisfy 0<lo<hi<1");
    require(tol_s > 0.0, ErrorCode::invalid_argument, "tolerance must be positive");
    RootReport rep;
    QuadratureConfig c = cfg;
    auto eval = [&](double s) {
        CurvatureResult r = curvature_at(E, p, s, c);
        ++rep.evaluations;
        if (!r.converged && !rep.retried) {
            rep.retried = true;
            c.rel_tol = std::max(1e-12, c.rel_tol * 1e-2);
            c.max_subdiv *= 4;
            r = curvature_at(E, p, s, c);
            ++rep.evaluations;
        }
        return r;
    };
    CurvatureResult flo = eval(s_lo), fhi = eval(s_hi);
    rep.value_lo = flo.value;
    rep.value_hi = fhi.value;
    if (std::abs(flo.value) <= flo.error_estimate && std::abs(fhi.value) <= fhi.error_estimate) {
        rep.degenerate = true;
        rep.lo = s_lo;
        rep.hi = s_hi;
        rep.width = s_hi - s_lo;
        rep.root = 0.5 * (s_lo + s_hi);
        return rep;
    }
    require(flo.value * fhi.value < 0.0, ErrorCode::same_sign_bracket, "curvature has the same sign at both ends");
    double lo = s_lo, hi = s_hi;
    while (hi - lo > tol_s) {
        const double mid = 0.5 * (lo + hi);
        const CurvatureResult fm = eval(mid);
        if (fm.value == 0.0) {
            lo = hi = mid;
            flo = fhi = fm;
            break;
        }
        if ((fm.value > 0.0) == (flo.value > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    rep.lo = lo;
    rep.hi = hi;
    rep.width = hi - lo;
    rep.root = hi > lo ? lo + (hi - lo) * flo.value / (flo.value - fhi.value) : lo;
    const CurvatureResult fr = eval(rep.root);
    rep.value_at_root = fr.value;
    rep.error_at_root = fr.error_estimate;
    return rep;
}

}  // namespace fracperim
