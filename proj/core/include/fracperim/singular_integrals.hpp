#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracperim/quadrature.hpp"
#include "fracperim/set_spec.hpp"

namespace fracperim {

struct IntegralEstimate {
    double value = 0.0;
    double error = 0.0;
    bool converged = true;
    std::string route;  // "closed_form" or "quadrature"
    long evaluations = 0;
};

struct PVEstimate {
    double value = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
    double quadrature_error = 0.0;
    double cutoff_error = 0.0;       // extrapolated loss from rays starting at the inner cutoff
    double schedule_mismatch = 0.0;  // |Richardson limit of the schedule - value|
    double sign_defect = 0.0;        // sphere measure of directions whose antipodal pair has equal start side
    std::vector<double> rho;
    std::vector<double> schedule;  // I_s^rho at each rho
    long evaluations = 0;
};

// H^{n-1} measure of the opening of a cone node (cap or angle box); nullopt for other nodes.
std::optional<double> cone_opening(const SetSpec& E);

// Sign of chi_CE - chi_E along q + t d for t in [cutoff, inf): +1 outside E, -1 inside.
// `changes` lists (t, new sign) after the initial sign. A prescribed `start` overrides the sign at the cutoff.
struct RayProfile {
    int start = 1;
    std::vector<std::pair<double, int>> changes;
};
RayProfile ray_profile(const SetSpec& E, const Vec& q, const Vec& d, double cutoff, std::optional<int> start,
                       const RayOptions& opt);
// Integral of sign(t) t^{-1-s} over [rho, inf).
double profile_tail(const RayProfile& p, double rho, double s);
// Finite part: profile_tail(p, rho, s) - start * rho^{-s}/s for rho below the first change.
double profile_finite_part(const RayProfile& p, double s);

// Integral over the complement of B_R(q) of chi_E |q - y|^{-n-s}.
IntegralEstimate exterior_mass(const SetSpec& E, const Vec& q, double R, double s, const QuadratureConfig& cfg);

// Integral over the complement of B_R(q) of (chi_CE - chi_E)|q - y|^{-n-s} when `signed_version`,
// otherwise the exterior mass of E.
IntegralEstimate tail_integral_estimate(const SetSpec& E, const Vec& q, double R, double s, bool signed_version,
                                        const QuadratureConfig& cfg = {});
double tail_integral(const SetSpec& E, const Vec& q, double R, double s, bool signed_version,
                     const QuadratureConfig& cfg = {});

// I_s^rho[E](q) with an explicit single cutoff.
IntegralEstimate truncated_integral(const SetSpec& E, const Vec& q, double s, double rho, const QuadratureConfig& cfg);

// Principal value I_s[E](q) together with the truncated values along the rho schedule.
PVEstimate pv_curvature_integral(const SetSpec& E, const Vec& q, double s, const QuadratureConfig& cfg = {});

}  // namespace fracperim
