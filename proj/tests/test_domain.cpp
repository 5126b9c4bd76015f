#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "piyavskii/bench.hpp"
#include "piyavskii/domain.hpp"

using namespace piyavskii;

namespace {

std::vector<double> first_coords(const PointSet& s) {
  std::vector<double> v;
  for (const auto& p : s.points) v.push_back(p[0]);
  std::sort(v.begin(), v.end());
  return v;
}

Objective abs_cone() { return make_linear_cone(BoxDomain::cube(1, -1.0, 1.0), {0.0}, 1.0); }

}  // namespace

TEST_CASE("norms") {
  const std::vector<double> v34 = {3, 4};
  const std::vector<double> v21 = {-2, 1};
  CHECK(NormSpec(NormKind::euclidean)(v34) == doctest::Approx(5.0));
  CHECK(NormSpec(NormKind::max)(v21) == doctest::Approx(2.0));
  CHECK(NormSpec(NormKind::one)(v21) == doctest::Approx(3.0));
  CHECK(norm_eval(NormSpec(NormKind::one, {2.0, 0.5}), v21) == doctest::Approx(4.5));
  CHECK(NormSpec(NormKind::euclidean, {2.0}).unit_ball_length_1d() == doctest::Approx(1.0));
  CHECK(NormSpec().unit_ball_length_1d() == doctest::Approx(2.0));
  CHECK_THROWS_AS(NormSpec(NormKind::max, {1.0, -1.0}), ValidationError);
  CHECK_THROWS_AS(norm_kind_from_string("l7"), ValidationError);
  for (auto k : {NormKind::euclidean, NormKind::max, NormKind::one}) {
    CHECK(norm_kind_from_string(to_string(k)) == k);
  }
}

TEST_CASE("norm triangle inequality on random vectors") {
  std::uint64_t s = 7;
  auto next = [&] {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<double>(s >> 11) / 9007199254740992.0 * 2.0 - 1.0;
  };
  for (auto k : {NormKind::euclidean, NormKind::max, NormKind::one}) {
    NormSpec n(k, {1.0, 3.0, 0.5});
    for (int t = 0; t < 200; ++t) {
      std::vector<double> a = {next(), next(), next()}, b = {next(), next(), next()}, c(3);
      for (int i = 0; i < 3; ++i) c[i] = a[i] + b[i];
      CHECK(n(c) <= n(a) + n(b) + 1e-12);
      CHECK(n.distance(a, b) == doctest::Approx(n.distance(b, a)));
    }
  }
}

TEST_CASE("diameter and eps0") {
  const NormSpec e(NormKind::euclidean), m(NormKind::max);
  CHECK(diameter(BoxDomain::cube(1, 0, 1), e) == doctest::Approx(1.0));
  CHECK(diameter(BoxDomain::cube(2, 0, 1), e) == doctest::Approx(std::sqrt(2.0)));
  CHECK(diameter(BoxDomain::cube(2, 0, 1), m) == doctest::Approx(1.0));
  CHECK(epsilon0(2.0, BoxDomain::cube(1, 0, 1), e) == doctest::Approx(2.0));
  CHECK(epsilon0(1.0, BoxDomain::cube(2, 0, 1), e) == doctest::Approx(std::sqrt(2.0)));
  for (std::size_t d = 1; d <= 4; ++d) {
    CHECK(epsilon0(1.0, BoxDomain::cube(d, -1, 1), e) == doctest::Approx(2.0 * std::sqrt(double(d))));
  }
  CHECK_THROWS_AS(epsilon0(0.0, BoxDomain::cube(1, 0, 1), e), ValidationError);
}

TEST_CASE("box validation and helpers") {
  CHECK_THROWS_AS(BoxDomain({0.0, 0.0}, {1.0}), ValidationError);
  CHECK_THROWS_AS(BoxDomain({1.0}, {0.0}), ValidationError);
  CHECK_THROWS_AS(BoxDomain({}, {}), ValidationError);
  BoxDomain b({0.0, -1.0}, {1.0, 1.0});
  const std::vector<double> in = {0.5, 0.0}, out = {1.5, 0.0};
  CHECK(b.contains(in));
  CHECK_FALSE(b.contains(out));
  CHECK(b.clamp(out) == Point{1.0, 0.0});
  CHECK(b.side_lengths() == Point{1.0, 2.0});
}

TEST_CASE("grid layout") {
  auto g = GridSpec::uniform(BoxDomain::cube(1, 0, 1), 11);
  CHECK(g.size() == 11);
  CHECK(g.point(0)[0] == doctest::Approx(0.0));
  CHECK(g.point(10)[0] == doctest::Approx(1.0));
  CHECK(g.covering_radius(NormSpec()) == doctest::Approx(0.05));

  GridSpec single(BoxDomain::cube(1, 0, 1), {1});
  CHECK(single.point(0)[0] == doctest::Approx(0.5));
  CHECK(single.covering_radius(NormSpec()) == doctest::Approx(0.5));

  auto g2 = GridSpec::uniform(BoxDomain::cube(2, 0, 1), 5);
  CHECK(g2.size() == 25);
  std::set<std::pair<double, double>> seen;
  for (const auto& p : g2.points()) seen.insert({p[0], p[1]});
  CHECK(seen.size() == 25);
  CHECK(g2.covering_radius(NormSpec(NormKind::max)) == doctest::Approx(0.125));
  CHECK(g2.covering_radius(NormSpec()) == doctest::Approx(0.125 * std::sqrt(2.0)));
  CHECK_THROWS_AS(GridSpec(BoxDomain::cube(2, 0, 1), {3}), ValidationError);
  CHECK_THROWS_AS(GridSpec(BoxDomain::cube(1, 0, 1), {0}), ValidationError);
}

TEST_CASE("near-optimal sets") {
  const auto f = abs_cone();
  const auto grid = GridSpec::uniform(f.domain, 11);
  const auto s = first_coords(near_optimal_set(f, grid, 0.3));
  REQUIRE(s.size() == 3);
  CHECK(s[0] == doctest::Approx(-0.2));
  CHECK(s[1] == doctest::Approx(0.0));
  CHECK(s[2] == doctest::Approx(0.2));
  CHECK(near_optimal_set(f, grid, f.eps0()).points.size() == 11);
  CHECK(near_optimal_set(f, grid, 10.0).points.size() == 11);

  const auto c = make_constant(BoxDomain::cube(1, 0, 1), 3.0);
  CHECK(near_optimal_set(c, grid, 1e-6).points.size() == 11);
  CHECK(near_optimal_set(c, GridSpec::uniform(c.domain, 7), 0.01).points.size() == 7);
}

TEST_CASE("layers") {
  const auto f = abs_cone();
  const auto grid = GridSpec::uniform(f.domain, 11);
  const auto s = first_coords(layer_set(f, grid, 0.3, 0.7));
  REQUIRE(s.size() == 4);
  CHECK(s[0] == doctest::Approx(-0.6));
  CHECK(s[1] == doctest::Approx(-0.4));
  CHECK(s[2] == doctest::Approx(0.4));
  CHECK(s[3] == doctest::Approx(0.6));

  // Gap exactly 0.4 at +-0.4 belongs to (0.2, 0.4], not (0.4, 0.6].
  CHECK(layer_set(f, grid, 0.2, 0.4).points.size() == 2);
  CHECK(layer_set(f, grid, 0.4, 0.6).points.size() == 2);

  const auto c = make_constant(BoxDomain::cube(1, 0, 1), 0.0);
  CHECK(layer_set(c, grid, 0.1, 0.2).points.empty());
  CHECK_THROWS_AS(layer_set(f, grid, 0.5, 0.5), ValidationError);
}

TEST_CASE("monotonicity and partition") {
  for (const char* name : {"linear_cone_1d", "quadratic_2d", "mixed_regime_2d", "rough_1d"}) {
    const auto& f = lookup(name).objective;
    const auto grid = GridSpec::uniform(f.domain, f.dimension() == 1 ? 301 : 31);
    const auto values = evaluate_grid(f, grid);
    const double e0 = f.eps0();
    for (double eps : {e0 / 64, e0 / 10, e0 / 3}) {
      std::size_t total = near_optimal_set(values, eps).points.size();
      CHECK(near_optimal_set(values, eps / 2).points.size() <= total);
      std::set<std::vector<double>> seen;
      for (const auto& p : near_optimal_set(values, eps).points) seen.insert(p);
      double a = eps;
      for (int s = 0; s < 40; ++s) {
        const auto layer = layer_set(values, a, 2 * a);
        for (const auto& p : layer.points) CHECK(seen.insert(p).second);
        total += layer.points.size();
        a *= 2;
      }
      CHECK(total == grid.size());
      CHECK(seen.size() == grid.size());
    }
  }
}

TEST_CASE("assumption 1 on every registered objective") {
  for (const auto& named : registry()) {
    const auto& f = named.objective;
    if (!f.maximizer) continue;
    const auto grid = GridSpec::uniform(f.domain, f.dimension() == 1 ? 10001 : 101);
    CHECK_MESSAGE(assumption1_margin(f, grid.points()) >= -1e-9, named.name);
  }
}
