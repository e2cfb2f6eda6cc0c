#pragma once

#include <vector>

#include "fracperim/curvature.hpp"
#include "fracperim/quadrature.hpp"
#include "fracperim/set_spec.hpp"

namespace fracperim {

struct TangentBall {
    Vec center;
    double radius;
};

struct PositiveCurvatureReport {
    double s = 0.0, sigma = 0.0, beta = 0.0;
    double bound = 0.0;  // beta / s
    double delta_sigma = 0.0;
    std::vector<double> rho;
    std::vector<double> values;  // I_s^rho at the last schedule levels
    std::vector<double> errors;
    double min_value = 0.0;
    bool pass = false;
};

// Liminf in rho of I_s^rho stands in as the minimum over the last four schedule levels.
// Throws threshold_exceeded when alpha_bar >= omega_n / 2 and precondition_violated for a bad witness.
PositiveCurvatureReport positive_curvature_check(const SetSpec& E, const Vec& q, const TangentBall& witness,
                                                 double alpha_bar, double s, double sigma,
                                                 const QuadratureConfig& cfg = {});

struct RootReport {
    bool degenerate = false;  // both endpoint values vanish within their error estimates
    double root = 0.0;
    double lo = 0.0, hi = 0.0;  // final bracket
    double width = 0.0;
    double value_lo = 0.0, value_hi = 0.0;  // at the initial bracket ends
    double value_at_root = 0.0, error_at_root = 0.0;
    int evaluations = 0;
    bool retried = false;
};

// Bisection on s -> I_s[E](p); the returned root interpolates linearly inside the final bracket.
RootReport sign_change_root(const SetSpec& E, const Vec& p, double s_lo, double s_hi,
                            const QuadratureConfig& cfg = {}, double tol_s = 1e-3);

}  // namespace fracperim
