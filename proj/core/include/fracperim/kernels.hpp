#pragma once

namespace fracperim {

// g_s(t) = (1 + t^2)^{-(n+s)/2}.
double g_kernel(int n, double s, double t);

// G_s(t) = integral of g_s over [0, t]; odd, increasing, bounded by G_s(inf).
double G_kernel(int n, double s, double t);
double G_kernel_limit(int n, double s);

// G_s(a) - G_s(b), accurate when a and b are close.
double G_difference(int n, double s, double a, double b);

// Exponent-only variants used with s = 0 for closed-form limits: integral of (1+t^2)^{-p/2} over [0, t], p > 1.
double G_power(double p, double t);

}  // namespace fracperim
