// analysis.hpp
//
// Packing and covering numbers of finite point sets and of unions of
// intervals, the sample-complexity bounds built on them, and a log-log fit of
// the near-optimality dimension.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "piyavskii/domain.hpp"

namespace piyavskii {

/// Packing number N(A, r): the largest number of points of A whose pairwise
/// distances all exceed r.
struct PackingResult {
  std::size_t lower = 0;
  std::size_t upper = 0;
  std::optional<std::size_t> exact;
};

/// Exact in d = 1 (sorted sweep). In d >= 2, lower is a greedy maximal packing
/// and upper the size of a greedy r/2-cover, since N(A, r) <= M(A, r/2).
PackingResult packing_number(std::span<const Point> points, double r, const NormSpec& norm);

/// Size of a maximal r-packing built greedily in lexicographic order.
std::size_t greedy_packing(std::span<const Point> points, double r, const NormSpec& norm);

/// Size of a cover by closed r-balls centred at points of the set, built by
/// repeatedly centring a ball on an uncovered point.
std::size_t covering_number_greedy(std::span<const Point> points, double r, const NormSpec& norm);

/// Interval of the real line with per-end openness.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  bool empty() const { return lo > hi || (lo == hi && (lo_open || hi_open)); }
  double length() const { return empty() ? 0.0 : hi - lo; }
};

/// Exact continuum packing number of a finite union of intervals.
std::size_t interval_packing_number(std::vector<Interval> intervals, double r);

/// X_t as an interval, for a 1-D objective with a declared gap profile.
std::vector<Interval> near_optimal_intervals(const Objective& objective, double t);
/// X_(a,b] as at most two intervals.
std::vector<Interval> layer_intervals(const Objective& objective, double a, double b);

/// An integer quantity known only up to an interval.
struct CountInterval {
  std::size_t lower = 0;
  std::size_t upper = 0;
  bool exact() const { return lower == upper; }
};

/// ceil(log2(eps0 / eps)), robust to round-off at exact powers of two.
std::size_t dyadic_depth(double eps0, double eps);

/// Layer sum + 1 over s = 0..m-1, with grid-restricted layers.
CountInterval n_tilde(const Objective& objective, const GridSpec& grid, double eps, double alpha,
                      double L1, double L0);
/// Near-optimal packing term + layer sum over s = 0..m, grid-restricted.
CountInterval n_tilde_prime(const Objective& objective, const GridSpec& grid, double eps, double alpha,
                            double L1, double L0);
/// Same quantities on the continuum, exact, for 1-D objectives with a gap profile.
std::size_t n_tilde_exact_1d(const Objective& objective, double eps, double alpha, double L1, double L0);
std::size_t n_tilde_prime_exact_1d(const Objective& objective, double eps, double alpha, double L1,
                                   double L0);

struct CstarInputs {
  double cstar = 0.0;
  double dstar = 0.0;
  double eps = 0.0;
  double eps0 = 0.0;
  double L0 = 1.0;
  double L1 = 1.0;
  double alpha = 0.0;
  std::size_t dimension = 1;
};

/// Budget bound in terms of (C*, d*), requires alpha <= eps/9.
double n_bar(const CstarInputs& in);
/// Stopping bound in terms of (C*, d*), requires alpha <= eps/15.
double n_bar_prime(const CstarInputs& in);
/// 900 (sigma1^2/eps^2)(n+1) ln(4(n+1)/delta) + n. Plain arithmetic: any
/// delta > 0 is accepted here, compute_bounds insists on (0, 1).
double stochastic_bound(double n_inner, double sigma1, double eps, double delta);

struct HansenResult {
  double value = 0.0;
  double integral = 0.0;
  double error_estimate = 0.0;  // Richardson estimate on the integral
};

/// 1 + 2 L0 / ln(1 + L0/L1) * int_D dx / (f(x*) - f(x) + eps), by composite
/// Simpson over the domain interval.
HansenResult hansen_bound_1d(const Objective& objective, double L0, double L1, double eps,
                             std::size_t panels = 10000);
/// 1 + v1 C* / ln(1 + L0/L1) * {2 log2(eps0/eps) + 3, or (2^(d*+1)/(2^d*-1) + 1)(eps0/eps)^d*}.
double hansen_corollary_bound(double cstar, double dstar, double eps, double eps0, double L0, double L1,
                              double v1);

/// 9^d (eps0/eps)^d.
double packing_bound_generic(double eps, double eps0, std::size_t d);
/// (1 + 4 (r2/r1) 1{r2 > r1})^d, so that N(A, r1) <= multiplier * N(A, r2).
double rescale_lemma_multiplier(double r1, double r2, std::size_t d);
double rescale_lemma_bound(double packing_at_r2, double r1, double r2, std::size_t d);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares y ~ intercept + slope x.
LineFit least_squares(std::span<const double> x, std::span<const double> y);

struct DimensionFit {
  std::vector<double> scales;      // eps_s = eps0 2^-s
  std::vector<double> log_ratio;   // ln(eps0 / eps_s)
  std::vector<std::size_t> packings;  // N(X_eps, eps / (2 L0)) on the grid
  double dstar = 0.0;
  double cstar = 0.0;
  double r_squared = 0.0;
};

/// Scales eps0 2^-s for s = first_scale .. first_scale + scale_count - 1.
DimensionFit fit_near_optimality(const Objective& objective, const GridSpec& grid, double L0,
                                 std::size_t scale_count, std::size_t first_scale = 0);

struct PiecewiseFit {
  std::size_t breakpoint = 0;  // index of the first fine-scale point
  LineFit coarse;
  LineFit fine;
};

/// Two-segment fit with an exhaustive breakpoint scan; each segment keeps at
/// least `min_points` points.
PiecewiseFit fit_piecewise(const DimensionFit& fit, std::size_t min_points = 3);

struct BoundEntry {
  std::string name;
  double value = 0.0;
  std::optional<double> upper;  // set for grid-restricted interval values
  std::string note;
};

struct BoundRequest {
  double eps = 0.0;
  double alpha = 0.0;
  std::optional<double> L0;  // defaults to the objective's declaration
  double L1 = 1.0;
  std::optional<double> cstar;
  std::optional<double> dstar;
  std::optional<double> sigma1;
  std::optional<double> delta;
  std::size_t grid_points = 2001;  // per axis, for grid-restricted packings
};

struct BoundReport {
  double eps0 = 0.0;
  BoundRequest inputs;
  std::vector<BoundEntry> entries;

  const BoundEntry* find(const std::string& name) const;
};

/// Evaluates every bound whose preconditions hold; skipped bounds are listed
/// with a note instead of a value.
BoundReport compute_bounds(const Objective& objective, const BoundRequest& request);

}  // namespace piyavskii
