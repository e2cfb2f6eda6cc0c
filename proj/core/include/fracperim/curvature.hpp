#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fracperim/graph_function.hpp"
#include "fracperim/quadrature.hpp"
#include "fracperim/set_spec.hpp"
#include "fracperim/singular_integrals.hpp"

namespace fracperim {

struct CurvatureResult {
    double s = 0.0;
    double value = 0.0;      // I_s
    double scaled_s0 = 0.0;  // s * I_s
    double scaled_s1 = 0.0;  // (1 - s) * I_s
    double local_part = 0.0;
    double tail_part = 0.0;
    double error_estimate = 0.0;
    bool converged = true;
    std::string method;  // "graph" or "pv"
};

// Near p the set is {orientation * (x[axis] - u(x without axis)) > 0}.
struct GraphChart {
    GraphFunction u;
    int axis = 0;
    int orientation = 1;
};

struct Cylinder {
    double r = 0.0;
    double h = 0.0;
};

// Local graph description of E at p, for balls, half-spaces and supergraphs (and complements, translates and
// boolean combinations whose boundary near p belongs to one of them).
std::optional<GraphChart> auto_chart(const SetSpec& E, const Vec& p);

// Largest tested cylinder (halving from r0) on which E matches the chart and |u - p_axis| < h/2 on B'_{2r}.
std::optional<Cylinder> fit_cylinder(const SetSpec& E, const GraphChart& chart, const Vec& p, double r0);

CurvatureResult curvature_graph(const GraphChart& chart, const Vec& p, const SetSpec& E_far, double r, double h,
                                double s, const QuadratureConfig& cfg = {});
// Supergraph in the last coordinate.
CurvatureResult curvature_graph(const GraphFunction& u, const Vec& p, const SetSpec& E_far, double r, double h,
                                double s, const QuadratureConfig& cfg = {});

// Graph formula when a chart is available, principal-value quadrature otherwise.
CurvatureResult curvature_at(const SetSpec& E, const Vec& p, double s, const QuadratureConfig& cfg = {});
CurvatureResult curvature_pv(const SetSpec& E, const Vec& p, double s, const QuadratureConfig& cfg = {});

double curvature_truncated(const SetSpec& E, const Vec& q, double s, double rho, const QuadratureConfig& cfg = {});

// Classical curvature, positive for balls; the mean of the principal curvatures when n = 3.
double classical_curvature(const GraphChart& chart, const Vec& p, double step);
std::optional<double> classical_curvature(const SetSpec& E, const Vec& p);

enum class ScanMode { raw, times_s, times_one_minus_s };
std::string to_string(ScanMode mode);
ScanMode scan_mode_from_string(const std::string& name);

struct CurvatureScan {
    ScanMode mode;
    std::vector<CurvatureResult> rows;
    std::optional<double> predicted_limit;     // omega_n - 2 alpha or omega_{n-1} H
    std::optional<double> extrapolated_limit;  // linear fit in s or (1-s) through the grid end nearest the limit
};

CurvatureScan curvature_scan(const SetSpec& E, const Vec& p, const std::vector<double>& s_grid, ScanMode mode,
                             const QuadratureConfig& cfg = {}, std::optional<double> curvature_H = std::nullopt);

enum class PerturbationKind { graph, point_shift, s_shift };
std::string to_string(PerturbationKind kind);
PerturbationKind perturbation_from_string(const std::string& name);

struct ContinuityReport {
    PerturbationKind kind;
    double s = 0.0;
    double base_value = 0.0;
    std::vector<double> etas;
    std::vector<double> differences;
    std::vector<double> errors;
    bool monotone = true;
};

ContinuityReport continuity_probe(const SetSpec& E, const Vec& p, double s, PerturbationKind kind,
                                  const std::vector<double>& etas, const QuadratureConfig& cfg = {});

}  // namespace fracperim
