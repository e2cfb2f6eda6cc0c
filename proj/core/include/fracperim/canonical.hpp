#pragma once

#include <map>
#include <string>
#include <vector>

#include "fracperim/set_spec.hpp"

namespace fracperim {

using SetParams = std::map<std::string, double>;

// Named reference sets.  Unknown names or out-of-range parameters throw.
//   halfspace (n), quadrant, cone (n, half_angle), ball (n, radius), annulus (r_in, r_out),
//   cubic_supergraph, parabola (n), tanh_supergraph (n), sublinear_supergraph (n, c, p),
//   candy (c, p), alphasigma (n, k, eps_bar), alphasigma_cone (k, eps_bar),
//   gamma_k_eps (n, k, eps), dimpled_quadrant (x, delta), empty (n), full (n)
SetSpec canonical_set(const std::string& name, const SetParams& params = {});

std::vector<std::string> canonical_names();

}  // namespace fracperim
