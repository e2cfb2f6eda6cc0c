#pragma once

namespace fracperim {

// H^{n-1} of the unit sphere in R^n; omega(0) = 0.
double omega(int n);

// (omega_n - 2 alpha_bar) / 4.
double beta_threshold(int n, double alpha_bar);

// ((omega_n + beta) / (omega_n + 2 beta))^{1/s}; needs alpha_bar < omega_n / 2.
double delta_s(double s, double alpha_bar, int n);

struct ThresholdSet {
    int n = 2;
    double omega_n = 0.0;
    double alpha_bar = 0.0;
    double beta = 0.0;

    static ThresholdSet make(int n, double alpha_bar);
    bool positive_regime() const { return beta > 0.0; }
    double delta_of_s(double s) const;
};

}  // namespace fracperim
