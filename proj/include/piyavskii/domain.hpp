// domain.hpp
//
// Box domains, weighted norms, the black-box objective abstraction and the
// grid restrictions of near-optimal sets and layers.

#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace piyavskii {

using Point = std::vector<double>;

/// Raised for every violated precondition (bad dimensions, ranges, names).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class NormKind { euclidean, max, one };

std::string to_string(NormKind kind);
NormKind norm_kind_from_string(const std::string& name);

/// A weighted 1, 2 or sup norm: ||v|| = base_norm(w_1 v_1, ..., w_d v_d).
/// An empty weight vector means unit weights in any dimension.
class NormSpec {
 public:
  NormSpec() = default;
  explicit NormSpec(NormKind kind, std::vector<double> weights = {});

  NormKind kind() const { return kind_; }
  const std::vector<double>& weights() const { return weights_; }
  double weight(std::size_t i) const { return weights_.empty() ? 1.0 : weights_[i]; }

  double operator()(std::span<const double> v) const;
  double distance(std::span<const double> a, std::span<const double> b) const;

  /// Length of the unit ball {x in R : ||x|| <= 1}; only meaningful for d = 1.
  double unit_ball_length_1d() const;

 private:
  NormKind kind_ = NormKind::euclidean;
  std::vector<double> weights_;
};

double norm_eval(const NormSpec& spec, std::span<const double> v);

/// Axis-aligned compact box [lower, upper].
class BoxDomain {
 public:
  BoxDomain(std::vector<double> lower, std::vector<double> upper);
  static BoxDomain cube(std::size_t dimension, double lo, double hi);

  std::size_t dimension() const { return lower_.size(); }
  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }
  bool contains(std::span<const double> x, double tol = 0.0) const;
  Point clamp(std::span<const double> x) const;
  Point side_lengths() const;

 private:
  Point lower_;
  Point upper_;
};

/// sup_{x,y in D} ||x - y||; for a box and a weighted 1/2/sup norm this is
/// the norm of the side-length vector.
double diameter(const BoxDomain& domain, const NormSpec& spec);

/// eps0 = L0 * diameter(D): every point of D is eps0-optimal.
double epsilon0(double L0, const BoxDomain& domain, const NormSpec& spec);

/// Distance profile of a radially monotone objective: the suboptimality gap
/// satisfies gap(x) <= t  <=>  ||x - x*|| <= radius(t). May return +inf.
using GapProfile = std::function<double(double)>;

struct Objective {
  std::function<double(std::span<const double>)> evaluator;
  BoxDomain domain;
  NormSpec norm;
  std::optional<double> L0;
  std::optional<Point> maximizer;
  std::optional<double> max_value;
  std::optional<double> cstar;
  std::optional<double> dstar;
  GapProfile gap_profile;  // empty when the level sets are not balls around x*

  double operator()(std::span<const double> x) const { return evaluator(x); }
  std::size_t dimension() const { return domain.dimension(); }
  double eps0() const;
};

/// Minimum over `points` of f(x) - f(x*) + L0 ||x* - x||; nonnegative iff the
/// sampled points satisfy Lipschitzness around the maximum.
double assumption1_margin(const Objective& objective, std::span<const Point> points);

/// Regular lattice: one point at the centre of an axis with a single point,
/// otherwise `n` equispaced points including both ends.
class GridSpec {
 public:
  GridSpec(const BoxDomain& domain, std::vector<std::size_t> points_per_axis);
  static GridSpec uniform(const BoxDomain& domain, std::size_t points_per_axis);

  std::size_t size() const { return size_; }
  std::size_t dimension() const { return counts_.size(); }
  const std::vector<std::size_t>& points_per_axis() const { return counts_; }
  Point point(std::size_t index) const;
  void point_into(std::size_t index, Point& out) const;
  std::vector<Point> points() const;

  /// max over x in D of the distance to the nearest grid point.
  double covering_radius(const NormSpec& spec) const;

 private:
  BoxDomain domain_;
  std::vector<std::size_t> counts_;
  std::vector<double> step_;
  std::size_t size_ = 0;
};

/// Objective values on a grid, evaluated once and reused across scales.
struct GridValues {
  std::vector<Point> points;
  std::vector<double> values;
  double max_value = 0.0;
  bool max_from_grid = false;  // true when f(x*) was not declared
  double covering_radius = 0.0;

  double gap(std::size_t i) const { return max_value - values[i]; }
};

GridValues evaluate_grid(const Objective& objective, const GridSpec& grid);

struct PointSet {
  std::vector<Point> points;
  bool max_from_grid = false;
  double covering_radius = 0.0;
};

inline constexpr double kBoundaryTolerance = 1e-12;

PointSet near_optimal_set(const GridValues& values, double eps);
PointSet near_optimal_set(const Objective& objective, const GridSpec& grid, double eps);

/// Grid points with gap in (a, b]; a boundary tie goes to the lower layer.
PointSet layer_set(const GridValues& values, double a, double b);
PointSet layer_set(const Objective& objective, const GridSpec& grid, double a, double b);

}  // namespace piyavskii
