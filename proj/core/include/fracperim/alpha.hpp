#pragma once

#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fracperim/domain.hpp"
#include "fracperim/quadrature.hpp"
#include "fracperim/set_spec.hpp"
#include "fracperim/singular_integrals.hpp"

namespace fracperim {

struct ClosedAlpha {
    double value;
    std::string family;
};

// Exact contribution from infinity for cones, half-spaces, growth-tagged supergraphs, bounded sets and
// their rigid motions, complements and bounded modifications.
std::optional<ClosedAlpha> alpha_closed_form(const SetSpec& E);

struct AlphaEstimate {
    std::vector<double> s_grid;         // decreasing
    std::vector<double> alpha_values;   // alpha_s
    std::vector<double> scaled_values;  // s * alpha_s
    std::vector<double> scaled_errors;
    double extrapolated_limit = 0.0;
    double error_bar = 0.0;
    std::optional<std::pair<double, double>> limsup_liminf;
    std::optional<double> closed_form;
    std::string family;
    bool converged = true;
};

IntegralEstimate alpha_s_estimate(const SetSpec& E, const Vec& q, double r, double s, const QuadratureConfig& cfg);
double alpha_s(const SetSpec& E, const Vec& q, double r, double s, const QuadratureConfig& cfg = {});

// 0.2, 0.1, ..., 0.003125.
std::vector<double> default_alpha_grid();

AlphaEstimate alpha_limit(const SetSpec& E, const Vec& q, double r, const QuadratureConfig& cfg = {},
                          const std::vector<double>& s_grid = default_alpha_grid());

enum class AlphaRelation { monotone, additive, rigid_motion, scaling, symm_diff };
std::string to_string(AlphaRelation rel);
AlphaRelation alpha_relation_from_string(const std::string& name);

struct CalculusSample {
    Vec q;
    double r, s, lambda;
    double lhs, rhs, slack;  // the relation reads lhs <= rhs (inequalities) or lhs == rhs, up to slack
};

struct CalculusReport {
    AlphaRelation relation;
    std::vector<CalculusSample> samples;
    double max_violation = 0.0;  // max over samples of (gap - slack), clipped at 0
    double max_relative_gap = 0.0;
    bool pass = true;
    // symm_diff only: the two limits and their error bars.
    std::optional<std::pair<double, double>> limits;
    double limit_tolerance = 0.0;
};

// Monotone and symm_diff take E, F; additive takes disjoint E, F; rigid_motion and scaling ignore F.
CalculusReport alpha_calculus_check(const SetSpec& E, const SetSpec& F, AlphaRelation relation,
                                    const QuadratureConfig& cfg, int samples = 20, std::uint64_t seed = 7);

struct DualityReport {
    double alpha_E, alpha_CE, error_bar, omega_n;
    bool pass;
};
DualityReport complement_duality_check(const SetSpec& E, const Vec& q, double r, const QuadratureConfig& cfg);

}  // namespace fracperim
