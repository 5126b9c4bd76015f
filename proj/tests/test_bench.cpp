#include <doctest.h>

#include <cmath>
#include <random>

#include "piyavskii/bench.hpp"

using namespace piyavskii;

namespace {

double at(const Objective& f, Point x) { return f(x); }

}  // namespace

TEST_CASE("registry metadata") {
  CHECK(lookup("linear_cone_1d").objective.dstar == 0.0);
  CHECK(lookup("quadratic_2d").objective.dstar == 1.0);
  CHECK(lookup("quadratic_1d").objective.dstar == 0.5);
  CHECK_THROWS_AS(lookup("nope"), ValidationError);
  CHECK(registry_names().size() == registry().size());
  CHECK(lookup("linear_cone_2d").objective.cstar == doctest::Approx(81.0));
  CHECK(lookup("quadratic_1d").objective.cstar == doctest::Approx(1 + 8 * std::sqrt(2.0)));

  const auto& q = lookup("quadratic_1d").objective;
  CHECK(*q.L0 == doctest::Approx(2 * 0.7 * 1.0));
  const auto& q2 = lookup("quadratic_2d").objective;
  CHECK(*q2.L0 == doctest::Approx(2 * std::hypot(0.7, 0.6)));

  CHECK(at(lookup("mixed_regime_1d").objective, {0.0}) == doctest::Approx(0.25));
  CHECK(at(lookup("mixed_regime_2d").objective, {0.0, 0.0}) == doctest::Approx(0.25));
  CHECK(lookup("mixed_regime_2d").objective.eps0() == doctest::Approx(2 * std::sqrt(2.0)));
  const auto c = make_constant(BoxDomain::cube(1, 0, 1), 3.5);
  CHECK(at(c, {0.2}) == 3.5);
  CHECK(at(c, {0.9}) == 3.5);
}

TEST_CASE("declared maxima and profiles are consistent") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& named : registry()) {
    const auto& f = named.objective;
    INFO(named.name);
    REQUIRE(f.max_value);
    REQUIRE(f.maximizer);
    CHECK(f(*f.maximizer) == doctest::Approx(*f.max_value));
    for (int t = 0; t < 2000; ++t) {
      Point x(f.dimension());
      for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = f.domain.lower()[i] + u(gen) * (f.domain.upper()[i] - f.domain.lower()[i]);
      }
      const double fx = f(x);
      CHECK(fx <= *f.max_value + 1e-12);
      if (f.gap_profile) {
        const double gap = *f.max_value - fx;
        const double dist = f.norm.distance(x, *f.maximizer);
        const double t1 = gap * (1 + 1e-9) + 1e-12, t0 = gap * (1 - 1e-9) - 1e-12;
        CHECK(dist <= f.gap_profile(t1) + 1e-9);
        if (t0 >= 0) CHECK(dist >= f.gap_profile(t0) - 1e-9);
      }
    }
  }
}

TEST_CASE("rough_1d is calm but not Lipschitz") {
  const auto& f = lookup("rough_1d").objective;
  const double L0 = *f.L0;
  double worst_slope = 0;
  for (int i = 0; i < 10000; ++i) {
    const double a = i / 10000.0, b = a + 1e-7;
    worst_slope = std::max(worst_slope, std::abs(at(f, {b}) - at(f, {a})) / 1e-7);
  }
  CHECK(worst_slope > 10 * L0);
  const auto grid = GridSpec::uniform(f.domain, 10001);
  CHECK(assumption1_margin(f, grid.points()) >= -1e-9);
}

TEST_CASE("objective factories validate input") {
  const auto unit = BoxDomain::cube(1, 0, 1);
  CHECK_THROWS_AS(make_linear_cone(unit, {0.3, 0.3}, 1.0), ValidationError);
  CHECK_THROWS_AS(make_linear_cone(unit, {0.3}, -1.0), ValidationError);
  CHECK_THROWS_AS(make_quadratic(unit, {2.0}, 1.0), ValidationError);
  CHECK_THROWS_AS(make_mixed_regime(0), ValidationError);
  const auto s = make_spike(unit, 2.0, 50.0, {0.5});
  CHECK(at(s, {0.5}) == 2.0);
  CHECK(at(s, {0.0}) == 0.0);
  CHECK(*s.L0 == 50.0);
}
