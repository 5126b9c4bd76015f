#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "piyavskii/analysis.hpp"
#include "piyavskii/bench.hpp"

using namespace piyavskii;

namespace {

const BoxDomain unit = BoxDomain::cube(1, 0, 1);

Objective tent() { return make_linear_cone(unit, {0.5}, 1.0); }

std::vector<Point> random_points(std::mt19937_64& gen, std::size_t n, std::size_t d) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<Point> pts(n, Point(d));
  for (auto& p : pts)
    for (auto& c : p) c = u(gen);
  return pts;
}

std::size_t brute(const std::vector<Point>& pts, double r, const NormSpec& norm) {
  return oracle::brute_max_packing(pts.size(), r, [&](std::size_t i, std::size_t j) {
    return norm.distance(pts[i], pts[j]);
  });
}

// Leftmost-greedy sweep over a fine mesh of a union of intervals.
std::size_t mesh_interval_packing(const std::vector<Interval>& iv, double r, double mesh) {
  std::vector<double> xs;
  for (const auto& I : iv) {
    if (I.empty()) continue;
    for (double x = I.lo; x <= I.hi; x += mesh) {
      if ((I.lo_open && x == I.lo) || (I.hi_open && x == I.hi)) continue;
      xs.push_back(x);
    }
    if (!I.hi_open) xs.push_back(I.hi);
  }
  std::sort(xs.begin(), xs.end());
  std::size_t n = 0;
  double last = -INFINITY;
  for (double x : xs) {
    if (x - last > r) {
      ++n;
      last = x;
    }
  }
  return n;
}

}  // namespace

TEST_CASE("packing examples") {
  const NormSpec e;
  const std::vector<Point> none;
  auto p = packing_number(none, 0.5, e);
  CHECK(p.lower == 0);
  CHECK(p.upper == 0);
  const std::vector<Point> one = {{0.3}};
  CHECK(packing_number(one, 0.5, e).exact == 1u);
  const std::vector<Point> two2 = {{0.3, 0.2}, {0.9, 0.9}};
  CHECK(covering_number_greedy(std::vector<Point>{{0.1, 0.1}}, 0.5, e) == 1);

  const auto grid = GridSpec::uniform(unit, 101).points();
  p = packing_number(grid, 0.3, e);
  REQUIRE(p.exact);
  CHECK(*p.exact == 4);
  CHECK(p.lower == 4);
  CHECK(p.upper == 4);
  CHECK(covering_number_greedy(grid, 0.5, e) <= 2);
  CHECK(covering_number_greedy(grid, 0.25, e) >= packing_number(grid, 0.5, e).lower);
  CHECK(greedy_packing(two2, 0.5, e) == 2);
  CHECK_THROWS_AS(packing_number(grid, 0.0, e), ValidationError);
}

TEST_CASE("1-D packing equals brute force") {
  std::mt19937_64 gen(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const NormSpec e;
  for (int t = 0; t < 1500; ++t) {
    auto pts = random_points(gen, 1 + gen() % 12, 1);
    if (t % 4 == 0)
      for (auto& p : pts) p[0] = std::round(p[0] * 10) / 10;  // ties at exactly r
    const double r = t % 4 == 0 ? 0.1 * static_cast<double>(1 + gen() % 4) : 0.4 * u(gen) + 1e-3;
    const auto res = packing_number(pts, r, e);
    REQUIRE(res.exact);
    CHECK(*res.exact == brute(pts, r, e));
  }
}

TEST_CASE("multi-dimensional packing brackets the maximum") {
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto kind : {NormKind::euclidean, NormKind::max, NormKind::one}) {
    const NormSpec norm(kind);
    for (int t = 0; t < 200; ++t) {
      const auto pts = random_points(gen, 1 + gen() % 12, 2 + t % 2);
      const double r = 0.05 + 0.6 * u(gen);
      const auto res = packing_number(pts, r, norm);
      const auto best = brute(pts, r, norm);
      CHECK(res.lower <= best);
      CHECK(best <= res.upper);
      if (res.exact) CHECK(*res.exact == best);
      const auto cover = covering_number_greedy(pts, r, norm);
      CHECK(packing_number(pts, 2 * r, norm).lower <= cover);
      CHECK(cover <= res.upper);
      const auto min_cover = oracle::brute_min_cover_by_points(pts.size(), r, [&](std::size_t i, std::size_t j) {
        return norm.distance(pts[i], pts[j]);
      });
      CHECK(brute(pts, 2 * r, norm) <= min_cover);
      CHECK(min_cover <= cover);
    }
  }
}

TEST_CASE("interval packings") {
  CHECK(interval_packing_number({}, 0.1) == 0);
  CHECK(interval_packing_number({{0.5, 0.5, false, false}}, 0.1) == 1);
  CHECK(interval_packing_number({{0.5, 0.5, true, false}}, 0.1) == 0);
  CHECK(interval_packing_number({{0, 1, false, false}}, 0.3) == 4);
  CHECK(interval_packing_number({{0, 1, false, false}}, 0.25) == 4);
  CHECK(interval_packing_number({{0, 1, true, true}}, 0.25) == 4);
  CHECK(interval_packing_number({{0, 0.25, false, true}}, 0.25) == 1);
  // Two pieces closer than r share the budget.
  CHECK(interval_packing_number({{0, 0.1, false, false}, {0.15, 0.2, false, false}}, 0.3) == 1);
  CHECK(interval_packing_number({{0, 0.1, false, false}, {0.5, 0.6, false, false}}, 0.3) == 2);

  for (double L : {0.0, 0.1, 0.25, 0.3, 1.0, 2.5}) {
    for (double r : {0.05, 0.1, 0.3, 0.7}) {
      CHECK(interval_packing_number({{0.0, L, false, false}}, r) == oracle::closed_interval_packing(L, r));
    }
  }

  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 300; ++t) {
    std::vector<Interval> iv;
    const std::size_t pieces = 1 + gen() % 4;
    for (std::size_t i = 0; i < pieces; ++i) {
      const double lo = u(gen), len = 0.3 * u(gen);
      iv.push_back({lo, lo + len, bool(gen() % 2), bool(gen() % 2)});
    }
    const double r = 0.02 + 0.2 * u(gen);
    const double mesh = 1e-4;
    const auto exact = interval_packing_number(iv, r);
    CHECK(mesh_interval_packing(iv, r, mesh) <= exact);
    CHECK(exact <= mesh_interval_packing(iv, r - 3 * mesh, mesh));
  }
}

TEST_CASE("near-optimal and layer intervals") {
  const auto f = tent();
  auto x = near_optimal_intervals(f, 0.2);
  REQUIRE(x.size() == 1);
  CHECK(x[0].lo == doctest::Approx(0.3));
  CHECK(x[0].hi == doctest::Approx(0.7));
  CHECK_FALSE(x[0].lo_open);
  x = near_optimal_intervals(f, 5.0);
  CHECK(x[0].lo == 0.0);
  CHECK(x[0].hi == 1.0);

  const auto l = layer_intervals(f, 0.1, 0.3);
  REQUIRE(l.size() == 2);
  CHECK(l[0].lo == doctest::Approx(0.2));
  CHECK(l[0].hi == doctest::Approx(0.4));
  CHECK(l[0].hi_open);
  CHECK_FALSE(l[0].lo_open);
  CHECK(l[1].lo == doctest::Approx(0.6));
  CHECK(l[1].hi == doctest::Approx(0.8));
  CHECK(l[1].lo_open);
  CHECK_FALSE(l[1].hi_open);
  for (const auto& I : layer_intervals(f, 0.5, 1.0)) CHECK(I.empty());

  const auto c = make_constant(unit, 1.0);
  for (const auto& I : layer_intervals(c, 0.1, 0.2)) CHECK(I.empty());
  CHECK_THROWS_AS(near_optimal_intervals(lookup("quadratic_2d").objective, 0.1), ValidationError);
}

TEST_CASE("dyadic depth") {
  CHECK(dyadic_depth(1.0, 0.25) == 2);
  CHECK(dyadic_depth(1.0, 0.3) == 2);
  CHECK(dyadic_depth(std::sqrt(2.0), std::sqrt(2.0) / 8) == 3);
  CHECK(dyadic_depth(0.7, 0.7 / 32) == 5);
  CHECK(dyadic_depth(1.0, 1.0) == 0);
}

TEST_CASE("n_tilde and n_tilde_prime") {
  const auto c = make_constant(unit, 0.0);
  const auto grid = GridSpec::uniform(unit, 2001);
  for (double eps : {0.5, 0.1, 0.01}) {
    CHECK(n_tilde_exact_1d(c, eps, 0.0, 1.0, 1.0) == 1);
    const auto g = n_tilde(c, grid, eps, 0.0, 1.0, 1.0);
    CHECK(g.lower == 1);
    CHECK(g.upper == 1);
    const std::size_t whole = oracle::closed_interval_packing(1.0, eps);
    CHECK(n_tilde_prime_exact_1d(c, eps, 0.0, 1.0, 1.0) == whole);
  }

  // Tent on [0,1], eps = eps0/4: layer (0.25, 0.5] is [0, 0.25) u (0.75, 1] at radius 0.25.
  const auto f = tent();
  CHECK(n_tilde_exact_1d(f, 0.25, 0.0, 1.0, 1.0) == 3);
  // Plus X_0.125 = [0.375, 0.625] at radius 0.25 and layer (0.125, 0.25] at radius 0.125.
  CHECK(n_tilde_prime_exact_1d(f, 0.25, 0.0, 1.0, 1.0) == 5);
  const auto gi = n_tilde(f, GridSpec::uniform(unit, 101), 0.25, 0.0, 1.0, 1.0);
  CHECK(gi.lower <= 3);
  CHECK(3 <= gi.upper);

  // Hand enumeration on an 11-point grid: layer (0.25, 0.5] = {0, 0.1, 0.2, 0.8, 0.9, 1.0}.
  const auto small = GridSpec::uniform(unit, 11);
  const auto gs = n_tilde(f, small, 0.25, 0.0, 1.0, 1.0);
  const std::vector<Point> layer = {{0.0}, {0.1}, {0.2}, {0.8}, {0.9}, {1.0}};
  CHECK(gs.lower == brute(layer, 0.25, NormSpec()) + 1);

  for (const char* name : {"linear_cone_1d", "quadratic_1d", "mixed_regime_1d"}) {
    const auto& g = lookup(name).objective;
    const double L0 = *g.L0, e0 = g.eps0();
    std::size_t prev = SIZE_MAX;
    for (double eps : {e0 / 64, e0 / 32, e0 / 16, e0 / 8, e0 / 4}) {
      for (double L1 : {L0, 2 * L0}) {
        const auto nt = n_tilde_exact_1d(g, eps, 0.0, L1, L0);
        const auto ntp = n_tilde_prime_exact_1d(g, eps, 0.0, L1, L0);
        CHECK(nt <= ntp + 1);
        if (L1 == L0) {
          CHECK(nt <= prev);
          prev = nt;
        }
        const auto grid_interval = n_tilde(g, GridSpec::uniform(g.domain, 4001), eps, 0.0, L1, L0);
        CHECK(grid_interval.lower <= nt);
      }
    }
  }

  CHECK_THROWS_AS(n_tilde_exact_1d(f, 0.25, 0.25 / 6, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(n_tilde_prime_exact_1d(f, 0.25, 0.25 / 12, 1.0, 1.0), ValidationError);
  CHECK_THROWS_AS(n_tilde_exact_1d(f, 0.25, 0.0, 0.5, 1.0), ValidationError);
  CHECK_THROWS_AS(n_tilde_exact_1d(f, 2.0, 0.0, 1.0, 1.0), ValidationError);
}

TEST_CASE("closed-form bounds") {
  CstarInputs in{9.0, 0.0, 1.0 / 16, 1.0, 1.0, 1.0, 0.0, 1};
  CHECK(n_bar(in) == doctest::Approx(1 + 9 * (4 + std::log2(18.0 / 7.0))).epsilon(1e-12));
  CHECK(n_bar(in) == doctest::Approx(49.26313).epsilon(1e-6));
  in.eps = 1.0 / 8;
  CHECK(n_bar_prime(in) == doctest::Approx(9 * (3 + std::log2(120.0 / 13.0))).epsilon(1e-12));
  in.dstar = 1.0;
  CHECK(n_bar_prime(in) == doctest::Approx(9 * ((4 + 2 - 1) * (15.0 / 13.0) * 8 - 1)).epsilon(1e-12));
  CHECK(n_bar(in) == doctest::Approx(1 + 9 * (18.0 / 7.0 * 8 - 1)).epsilon(1e-12));

  // The indicator switches on with alpha > 0 or L1 != L0.
  CstarInputs on{1.0, 0.0, 1.0 / 4, 1.0, 1.0, 2.0, 0.0, 1};
  CHECK(n_bar(on) == doctest::Approx(1 + 57 * (2 + std::log2(18.0 / 7.0))).epsilon(1e-12));
  CHECK(n_bar_prime(on) == doctest::Approx(105 * (2 + std::log2(120.0 / 13.0))).epsilon(1e-12));
  on.L1 = 1.0;
  on.alpha = on.eps / 15;
  CHECK(n_bar_prime(on) == doctest::Approx(53 * (2 + std::log2(120.0 / 13.0))).epsilon(1e-12));
  on.alpha = on.eps / 8;
  CHECK_THROWS_AS(n_bar(on), ValidationError);

  CHECK(stochastic_bound(1.0, 0.2, 0.2, 4.0 / std::exp(1.0)) ==
        doctest::Approx(900 * 2 * (1 + std::log(2.0)) + 1).epsilon(1e-12));
  CHECK(stochastic_bound(5.0, 0.4, 0.1, 0.1) - 5.0 ==
        doctest::Approx(4 * (stochastic_bound(5.0, 0.2, 0.1, 0.1) - 5.0)).epsilon(1e-12));
  CHECK(stochastic_bound(6.0, 0.2, 0.1, 0.1) > stochastic_bound(5.0, 0.2, 0.1, 0.1));

  CHECK(packing_bound_generic(0.5, 0.5, 3) == doctest::Approx(729));
  CHECK(packing_bound_generic(0.1, 1.0, 1) == doctest::Approx(90));
  CHECK(rescale_lemma_multiplier(0.2, 0.1, 2) == 1.0);
  CHECK(rescale_lemma_multiplier(0.2, 0.2, 2) == 1.0);
  CHECK(rescale_lemma_multiplier(0.1, 0.2, 1) == doctest::Approx(9));
  CHECK(rescale_lemma_bound(3, 0.1, 0.2, 2) == doctest::Approx(243));
}

TEST_CASE("rescale lemma on random sets") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const NormSpec norm;
  for (int t = 0; t < 200; ++t) {
    const std::size_t d = 1 + t % 2;
    const auto pts = random_points(gen, 1 + gen() % 12, d);
    const double r1 = 0.02 + 0.3 * u(gen), r2 = 0.02 + 0.3 * u(gen);
    CHECK(static_cast<double>(brute(pts, r1, norm)) <=
          rescale_lemma_bound(static_cast<double>(brute(pts, r2, norm)), r1, r2, d));
  }
}

TEST_CASE("Hansen bounds") {
  const auto f = tent();
  const auto h = hansen_bound_1d(f, 1.0, 1.0, 0.1);
  CHECK(h.integral == doctest::Approx(2 * std::log(6.0)).epsilon(1e-10));
  CHECK(h.value == doctest::Approx(1 + 2 / std::log(2.0) * 2 * std::log(6.0)).epsilon(1e-10));
  CHECK(h.value == doctest::Approx(11.34).epsilon(1e-3));
  CHECK(h.error_estimate < 1e-8);

  const auto c = make_constant(unit, 0.0);
  const auto hc = hansen_bound_1d(c, 1.0, 1.0, 0.25);
  CHECK(hc.integral == doctest::Approx(4.0).epsilon(1e-14));
  for (double eps : {0.05, 0.2, 0.9}) {
    CHECK(hansen_bound_1d(f, 1.0, 2.0, eps).value <= 1 + 2.0 / (eps * std::log(1.5)) + 1e-9);
  }

  const double v1 = NormSpec().unit_ball_length_1d();
  CHECK(v1 == 2.0);
  CHECK(hansen_corollary_bound(9, 0, 0.25, 1.0, 1.0, 1.0, v1) ==
        doctest::Approx(1 + 2 * 9 / std::log(2.0) * 7).epsilon(1e-12));
  CHECK(hansen_corollary_bound(9, 0, 0.1, 1.0, 1.0, 1.0, v1) > h.value);
  CHECK(hansen_corollary_bound(2, 0.5, 0.25, 1.0, 1.0, 1.0, v1) ==
        doctest::Approx(1 + 2 * 2 / std::log(2.0) * (std::pow(2, 1.5) / (std::sqrt(2.0) - 1) + 1) * 2)
            .epsilon(1e-12));
  CHECK_THROWS_AS(hansen_bound_1d(lookup("quadratic_2d").objective, 1, 1, 0.1), ValidationError);
}

TEST_CASE("generic packing bound dominates grid packings") {
  for (const auto& named : registry()) {
    const auto& f = named.objective;
    if (!f.L0) continue;
    const auto grid = GridSpec::uniform(f.domain, f.dimension() == 1 ? 2001 : 61);
    const auto values = evaluate_grid(f, grid);
    for (int s = 0; s < 5; ++s) {
      const double eps = f.eps0() * std::pow(0.5, s);
      const auto set = near_optimal_set(values, eps);
      const auto p = packing_number(set.points, eps / (2 * *f.L0), f.norm);
      CHECK_MESSAGE(static_cast<double>(p.lower) <= packing_bound_generic(eps, f.eps0(), f.dimension()), named.name);
    }
  }
}

TEST_CASE("bounds dominate measured counterparts") {
  for (const char* name : {"linear_cone_1d", "quadratic_1d"}) {
    const auto& f = lookup(name).objective;
    const double L0 = *f.L0, e0 = f.eps0();
    for (double ratio : {4.0, 8.0, 16.0, 32.0}) {
      const double eps = e0 / ratio;
      for (double L1 : {L0, 2 * L0}) {
        CstarInputs in{*f.cstar, *f.dstar, eps * 7 / 9, e0, L0, L1, 0.0, 1};
        CHECK(n_bar(in) >= static_cast<double>(n_tilde_exact_1d(f, eps, 0.0, L1, L0)));
        in.eps = eps;
        CHECK(n_bar_prime(in) >= static_cast<double>(n_tilde_prime_exact_1d(f, eps, 0.0, L1, L0)));
      }
    }
  }
}

TEST_CASE("least squares and fits") {
  const std::vector<double> x = {0, 1, 2, 3}, y = {1, 3, 5, 7};
  const auto l = least_squares(x, y);
  CHECK(l.slope == doctest::Approx(2.0));
  CHECK(l.intercept == doctest::Approx(1.0));
  CHECK(l.r_squared == doctest::Approx(1.0));
  CHECK_THROWS_AS(least_squares(std::vector<double>{1.0}, std::vector<double>{2.0}), ValidationError);

  DimensionFit synthetic;
  for (int i = 0; i < 10; ++i) {
    synthetic.log_ratio.push_back(i);
    synthetic.packings.push_back(static_cast<std::size_t>(i < 4 ? 5 : 5 * std::exp(0.5 * (i - 3))));
  }
  const auto pw = fit_piecewise(synthetic);
  CHECK(pw.breakpoint >= 3);
  CHECK(pw.breakpoint <= 5);
  CHECK(std::abs(pw.coarse.slope) < 0.15);
  CHECK(pw.fine.slope == doctest::Approx(0.5).epsilon(0.1));

  const auto& cone = lookup("linear_cone_1d").objective;
  const auto fit = fit_near_optimality(cone, GridSpec::uniform(cone.domain, 20001), 1.0, 8, 2);
  CHECK(fit.scales.size() == 8);
  CHECK(fit.scales[0] == doctest::Approx(cone.eps0() / 4));
  CHECK(std::abs(fit.dstar) < 0.15);
  CHECK(fit.cstar > 0);
  CHECK_THROWS_AS(fit_near_optimality(cone, GridSpec::uniform(cone.domain, 101), 1.0, 2), ValidationError);
}

TEST_CASE("bound reports") {
  const auto& c = lookup("constant").objective;
  BoundRequest req;
  req.eps = 0.1;
  auto rep = compute_bounds(c, req);
  REQUIRE(rep.find("n_tilde"));
  CHECK(rep.find("n_tilde")->value == 1.0);
  CHECK(rep.find("nonexistent") == nullptr);

  const auto& cone = lookup("linear_cone_1d").objective;
  req.cstar = 9;
  req.dstar = 0;
  req.sigma1 = 0.1;
  req.delta = 0.1;
  for (double eps : {cone.eps0() / 2, cone.eps0() / 16, cone.eps0() / 1000}) {
    req.eps = eps;
    rep = compute_bounds(cone, req);
    for (const char* name : {"n_bar", "n_bar_prime", "N_tilde_prime", "N_bar_prime", "hansen_n_py",
                             "hansen_n_bar_py", "n_tilde", "n_tilde_prime"}) {
      REQUIRE_MESSAGE(rep.find(name), name);
      CHECK_MESSAGE(std::isfinite(rep.find(name)->value), name);
    }
    CHECK(rep.find("N_bar_prime")->value ==
          doctest::Approx(stochastic_bound(
              n_bar_prime({9, 0, eps, cone.eps0(), 1, 1, eps / 15, 1}), 0.1, eps, 0.1)));
  }

  const auto& q2 = lookup("quadratic_2d").objective;
  req.eps = q2.eps0() / 4;
  req.grid_points = 41;
  req.L1 = *q2.L0;
  rep = compute_bounds(q2, req);
  REQUIRE(rep.find("hansen_n_py"));
  CHECK(std::isnan(rep.find("hansen_n_py")->value));
  CHECK(rep.find("hansen_n_py")->note.find("skipped") == 0);
  REQUIRE(rep.find("n_tilde"));
  CHECK(rep.find("n_tilde")->upper.has_value());
}
