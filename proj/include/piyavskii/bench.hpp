// bench.hpp
//
// Built-in objectives with declared ground truth (x*, f(x*), L0, C*, d*).

#pragma once

#include <string>
#include <vector>

#include "piyavskii/domain.hpp"

namespace piyavskii {

struct NamedObjective {
  std::string name;
  std::string description;
  Objective objective;
};

/// f(x) = 1 - L0 ||x - a||.
Objective make_linear_cone(const BoxDomain& domain, Point center, double L0,
                           NormSpec norm = NormSpec(NormKind::euclidean));
/// f(x) = 1 - beta ||x - a||_2^2 with L0 = 2 beta sup_x ||x - a||_2.
Objective make_quadratic(const BoxDomain& domain, Point center, double beta);
/// On [-1,1]^d: 1/4 - ||x||^2 inside the ball of radius 1/2, 1/2 - ||x|| outside.
Objective make_mixed_regime(std::size_t dimension);
/// max{0, height - L ||x - x0||}.
Objective make_spike(const BoxDomain& domain, double height, double L, Point x0);
/// Constant c; any L0 is valid, `nominal_L0` only fixes eps0.
Objective make_constant(const BoxDomain& domain, double c, double nominal_L0 = 1.0);
/// Cone 1 - L0 |x - x*| on [0,1] plus 0.4 L0 |x - x*| h(x), h a {0,1} square
/// wave of period 0.01: discontinuous, yet never below the L0-cone.
Objective make_rough_1d(double center = 0.3, double L0 = 1.0);

const std::vector<NamedObjective>& registry();
/// Throws ValidationError for an unknown name.
const NamedObjective& lookup(const std::string& name);
std::vector<std::string> registry_names();

}  // namespace piyavskii
