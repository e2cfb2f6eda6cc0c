#pragma once

#include <optional>
#include <vector>

#include "fracperim/domain.hpp"
#include "fracperim/minimizer.hpp"
#include "fracperim/quadrature.hpp"

namespace fracperim {

struct MuBarOptions {
    std::vector<double> s_grid{0.05, 0.025};
    GridOptions grid = [] {
        GridOptions g;
        g.resolution = 64;
        return g;
    }();
    double tolerance = 0.1;  // relative, against alpha_bar |Omega|
    bool continuum = true;   // second route by direct quadrature; ball domains in n = 2 only
    int continuum_radial = 16;
    int continuum_angular = 32;
};

struct MuBarReport {
    std::vector<double> s_grid;
    std::vector<double> grid_scaled;       // s P_s(E0, Omega) from the rasterized problem
    std::vector<double> continuum_scaled;  // same by quadrature over the domain, when computed
    double grid_limit = 0.0;               // linear extrapolation in s through the last two points
    std::optional<double> continuum_limit;
    double alpha_bar = 0.0;
    double alpha_error_bar = 0.0;
    double measure = 0.0;
    double target = 0.0;  // alpha_bar |Omega|
    double rel_error = 0.0;
    bool pass = false;
};

// s P_s(E0, Omega) as s -> 0 against alpha_bar(E0) |Omega|; E0 must miss the domain (checked on samples).
MuBarReport mu_bar_check(const SetSpec& E0, const Domain& omega, const QuadratureConfig& cfg = {},
                         const MuBarOptions& opt = {});

}  // namespace fracperim
