#include "piyavskii/bench.hpp"

#include <cmath>
#include <limits>

namespace piyavskii {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_inside(const BoxDomain& domain, const Point& x, const char* what) {
  if (!domain.contains(x)) throw ValidationError(std::string(what) + " must lie in the domain");
}

Objective blank(const BoxDomain& domain, const NormSpec& norm) {
  return Objective{{}, domain, norm, std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, {}};
}

}  // namespace

Objective make_linear_cone(const BoxDomain& domain, Point center, double L0, NormSpec norm) {
  require_inside(domain, center, "cone apex");
  if (!(L0 > 0.0)) throw ValidationError("cone slope must be > 0");
  Objective o = blank(domain, norm);
  o.evaluator = [center, L0, norm](std::span<const double> x) {
    return 1.0 - L0 * norm.distance(center, x);
  };
  o.L0 = L0;
  o.maximizer = center;
  o.max_value = 1.0;
  o.cstar = std::pow(9.0, static_cast<double>(domain.dimension()));
  o.dstar = 0.0;
  o.gap_profile = [L0](double t) { return t / L0; };
  return o;
}

Objective make_quadratic(const BoxDomain& domain, Point center, double beta) {
  require_inside(domain, center, "quadratic centre");
  if (!(beta > 0.0)) throw ValidationError("quadratic curvature must be > 0");
  const NormSpec norm(NormKind::euclidean);
  Point far(domain.dimension());
  for (std::size_t i = 0; i < far.size(); ++i) {
    far[i] = std::max(center[i] - domain.lower()[i], domain.upper()[i] - center[i]);
  }
  const double reach = norm(far);
  Objective o = blank(domain, norm);
  o.evaluator = [center, beta, norm](std::span<const double> x) {
    const double r = norm.distance(center, x);
    return 1.0 - beta * r * r;
  };
  o.L0 = 2.0 * reach * beta;
  o.maximizer = center;
  o.max_value = 1.0;
  const double d = static_cast<double>(domain.dimension());
  o.cstar = std::pow(1.0 + 8.0 * std::sqrt(2.0), d);
  o.dstar = d / 2.0;
  o.gap_profile = [beta](double t) { return std::sqrt(std::max(t, 0.0) / beta); };
  return o;
}

Objective make_mixed_regime(std::size_t dimension) {
  const NormSpec norm(NormKind::euclidean);
  const BoxDomain domain = BoxDomain::cube(dimension, -1.0, 1.0);
  Objective o = blank(domain, norm);
  o.evaluator = [norm](std::span<const double> x) {
    const double r = norm(x);
    return r <= 0.5 ? 0.25 - r * r : 0.5 - r;
  };
  o.L0 = 1.0;
  o.maximizer = Point(dimension, 0.0);
  o.max_value = 0.25;
  const double d = static_cast<double>(dimension);
  // Coarse scales are bounded by 17^d, fine scales by a smaller constant
  // times (eps0/eps)^(d/2); the single worst-case pair below covers both.
  o.cstar = std::pow(17.0, d);
  o.dstar = d / 2.0;
  o.gap_profile = [](double t) { return t <= 0.25 ? std::sqrt(std::max(t, 0.0)) : t + 0.25; };
  return o;
}

Objective make_spike(const BoxDomain& domain, double height, double L, Point x0) {
  require_inside(domain, x0, "spike centre");
  if (!(height > 0.0) || !(L > 0.0)) throw ValidationError("spike needs positive height and slope");
  const NormSpec norm(NormKind::euclidean);
  Objective o = blank(domain, norm);
  o.evaluator = [height, L, x0, norm](std::span<const double> x) {
    return std::max(0.0, height - L * norm.distance(x0, x));
  };
  o.L0 = L;
  o.maximizer = x0;
  o.max_value = height;
  const double d = static_cast<double>(domain.dimension());
  o.cstar = std::pow(9.0, d);
  o.dstar = d;
  o.gap_profile = [height, L](double t) { return t >= height ? kInf : t / L; };
  return o;
}

Objective make_constant(const BoxDomain& domain, double c, double nominal_L0) {
  Objective o = blank(domain, NormSpec(NormKind::euclidean));
  o.evaluator = [c](std::span<const double>) { return c; };
  o.L0 = nominal_L0;
  o.maximizer = domain.lower();
  o.max_value = c;
  const double d = static_cast<double>(domain.dimension());
  o.cstar = std::pow(9.0, d);
  o.dstar = d;
  o.gap_profile = [](double) { return kInf; };
  return o;
}

Objective make_rough_1d(double center, double L0) {
  const BoxDomain domain({0.0}, {1.0});
  require_inside(domain, {center}, "rough maximiser");
  Objective o = blank(domain, NormSpec(NormKind::euclidean));
  o.evaluator = [center, L0](std::span<const double> x) {
    const double r = std::abs(x[0] - center);
    const double wave = (static_cast<long long>(std::floor(x[0] / 0.005)) % 2 == 0) ? 1.0 : 0.0;
    return 1.0 - L0 * r + 0.4 * L0 * r * wave;
  };
  o.L0 = L0;
  o.maximizer = Point{center};
  o.max_value = 1.0;
  o.cstar = 9.0;
  o.dstar = 0.0;
  return o;
}

const std::vector<NamedObjective>& registry() {
  static const std::vector<NamedObjective> objectives = [] {
    const BoxDomain unit1({0.0}, {1.0});
    const BoxDomain unit2 = BoxDomain::cube(2, 0.0, 1.0);
    std::vector<NamedObjective> v;
    v.push_back({"linear_cone_1d", "1 - |x - 0.3| on [0,1]", make_linear_cone(unit1, {0.3}, 1.0)});
    v.push_back({"linear_cone_2d", "1 - ||x - (0.3,0.4)||_2 on [0,1]^2",
                 make_linear_cone(unit2, {0.3, 0.4}, 1.0)});
    v.push_back({"quadratic_1d", "1 - (x - 0.3)^2 on [0,1]", make_quadratic(unit1, {0.3}, 1.0)});
    v.push_back({"quadratic_2d", "1 - ||x - (0.3,0.4)||_2^2 on [0,1]^2", make_quadratic(unit2, {0.3, 0.4}, 1.0)});
    v.push_back({"mixed_regime_1d", "quadratic core, linear flanks on [-1,1]", make_mixed_regime(1)});
    v.push_back({"mixed_regime_2d", "quadratic core, linear flanks on [-1,1]^2", make_mixed_regime(2)});
    v.push_back({"spike_1d", "max{0, 1 - 100 |x - 0.3|} on [0,1]", make_spike(unit1, 1.0, 100.0, {0.3})});
    v.push_back({"spike_2d", "max{0, 1 - 100 ||x - (0.3,0.3)||_2} on [0,1]^2",
                 make_spike(unit2, 1.0, 100.0, {0.3, 0.3})});
    v.push_back({"constant", "f = 0 on [0,1]", make_constant(unit1, 0.0)});
    v.push_back({"constant_2d", "f = 0 on [0,1]^2", make_constant(unit2, 0.0)});
    v.push_back({"rough_1d", "discontinuous, Lipschitz only around x* = 0.3", make_rough_1d()});
    return v;
  }();
  return objectives;
}

const NamedObjective& lookup(const std::string& name) {
  for (const auto& o : registry()) {
    if (o.name == name) return o;
  }
  throw ValidationError("unknown objective: " + name);
}

std::vector<std::string> registry_names() {
  std::vector<std::string> names;
  for (const auto& o : registry()) names.push_back(o.name);
  return names;
}

}  // namespace piyavskii
