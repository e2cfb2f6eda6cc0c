#include "fracperim/thresholds.hpp"

#include <cmath>

#include "fracperim/error.hpp"

namespace fracperim {

double omega(int n) {
    require(n >= 0, ErrorCode::invalid_argument, "dimension must be >= 0");
    switch (n) {
        case 0: return 0.0;
        case 1: return 2.0;
        case 2: return 2.0 * M_PI;
        case 3: return 4.0 * M_PI;
        default: return 2.0 * std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n);
    }
}

double beta_threshold(int n, double alpha_bar) { return 0.25 * (omega(n) - 2.0 * alpha_bar); }

double delta_s(double s, double alpha_bar, int n) {
    require(s > 0.0 && s < 1.0, ErrorCode::invalid_argument, "s must lie in (0,1)");
    const double w = omega(n);
    require(alpha_bar >= 0.0, ErrorCode::invalid_argument, "alpha_bar must be >= 0");
    require(alpha_bar < 0.5 * w, ErrorCode::threshold_exceeded, "alpha_bar must be < omega_n/2");
    const double b = beta_threshold(n, alpha_bar);
    return std::pow((w + b) / (w + 2.0 * b), 1.0 / s);
}

ThresholdSet ThresholdSet::make(int n, double alpha_bar) {
    ThresholdSet t;
    t.n = n;
    t.omega_n = omega(n);
    t.alpha_bar = alpha_bar;
    t.beta = beta_threshold(n, alpha_bar);
    return t;
}

double ThresholdSet::delta_of_s(double s) const { return delta_s(s, alpha_bar, n); }

}  // namespace fracperim
