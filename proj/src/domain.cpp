#include "piyavskii/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace piyavskii {

std::string to_string(NormKind kind) {
  switch (kind) {
    case NormKind::euclidean: return "euclidean";
    case NormKind::max: return "max";
    case NormKind::one: return "one";
  }
  return "euclidean";
}

NormKind norm_kind_from_string(const std::string& name) {
  if (name == "euclidean" || name == "l2") return NormKind::euclidean;
  if (name == "max" || name == "linf" || name == "sup") return NormKind::max;
  if (name == "one" || name == "l1") return NormKind::one;
  throw ValidationError("unknown norm kind: " + name);
}

NormSpec::NormSpec(NormKind kind, std::vector<double> weights)
    : kind_(kind), weights_(std::move(weights)) {
  for (double w : weights_) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw ValidationError("norm weights must be finite and strictly positive");
    }
  }
}

double NormSpec::operator()(std::span<const double> v) const {
  if (!weights_.empty() && weights_.size() != v.size()) {
    throw ValidationError("norm weight dimension mismatch");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double c = std::abs(weight(i) * v[i]);
    switch (kind_) {
      case NormKind::euclidean: acc += c * c; break;
      case NormKind::max: acc = std::max(acc, c); break;
      case NormKind::one: acc += c; break;
    }
  }
  return kind_ == NormKind::euclidean ? std::sqrt(acc) : acc;
}

double NormSpec::distance(std::span<const double> a, std::span<const double> b) const {
  if (a.size() != b.size()) throw ValidationError("distance: dimension mismatch");
  if (!weights_.empty() && weights_.size() != a.size()) {
    throw ValidationError("norm weight dimension mismatch");
  }
  if (a.size() == 1) return weight(0) * std::abs(a[0] - b[0]);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double c = std::abs(weight(i) * (a[i] - b[i]));
    switch (kind_) {
      case NormKind::euclidean: acc += c * c; break;
      case NormKind::max: acc = std::max(acc, c); break;
      case NormKind::one: acc += c; break;
    }
  }
  return kind_ == NormKind::euclidean ? std::sqrt(acc) : acc;
}

double NormSpec::unit_ball_length_1d() const { return 2.0 / weight(0); }

double norm_eval(const NormSpec& spec, std::span<const double> v) { return spec(v); }

BoxDomain::BoxDomain(std::vector<double> lower, std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty()) throw ValidationError("box domain must have dimension >= 1");
  if (lower_.size() != upper_.size()) throw ValidationError("box bounds dimension mismatch");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!std::isfinite(lower_[i]) || !std::isfinite(upper_[i])) {
      throw ValidationError("box bounds must be finite");
    }
    if (lower_[i] > upper_[i]) throw ValidationError("box lower bound exceeds upper bound");
  }
}

BoxDomain BoxDomain::cube(std::size_t dimension, double lo, double hi) {
  return BoxDomain(Point(dimension, lo), Point(dimension, hi));
}

bool BoxDomain::contains(std::span<const double> x, double tol) const {
  if (x.size() != dimension()) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < lower_[i] - tol || x[i] > upper_[i] + tol) return false;
  }
  return true;
}

Point BoxDomain::clamp(std::span<const double> x) const {
  Point out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], lower_[i], upper_[i]);
  return out;
}

Point BoxDomain::side_lengths() const {
  Point s(dimension());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = upper_[i] - lower_[i];
  return s;
}

double diameter(const BoxDomain& domain, const NormSpec& spec) {
  return spec(domain.side_lengths());
}

double epsilon0(double L0, const BoxDomain& domain, const NormSpec& spec) {
  if (!(L0 > 0.0)) throw ValidationError("epsilon0 requires L0 > 0");
  return L0 * diameter(domain, spec);
}

double Objective::eps0() const {
  if (!L0) throw ValidationError("objective does not declare L0");
  return epsilon0(*L0, domain, norm);
}

double assumption1_margin(const Objective& objective, std::span<const Point> points) {
  if (!objective.L0 || !objective.maximizer) {
    throw ValidationError("assumption check needs declared L0 and maximizer");
  }
  const double fstar =
      objective.max_value ? *objective.max_value : objective(*objective.maximizer);
  double margin = std::numeric_limits<double>::infinity();
  for (const auto& x : points) {
    const double m =
        objective(x) - fstar + *objective.L0 * objective.norm.distance(*objective.maximizer, x);
    margin = std::min(margin, m);
  }
  return margin;
}

GridSpec::GridSpec(const BoxDomain& domain, std::vector<std::size_t> points_per_axis)
    : domain_(domain), counts_(std::move(points_per_axis)) {
  if (counts_.size() != domain.dimension()) throw ValidationError("grid dimension mismatch");
  size_ = 1;
  step_.resize(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] == 0) throw ValidationError("grid needs at least one point per axis");
    size_ *= counts_[i];
    const double side = domain.upper()[i] - domain.lower()[i];
    step_[i] = counts_[i] == 1 ? 0.0 : side / static_cast<double>(counts_[i] - 1);
  }
}

GridSpec GridSpec::uniform(const BoxDomain& domain, std::size_t points_per_axis) {
  return GridSpec(domain, std::vector<std::size_t>(domain.dimension(), points_per_axis));
}

void GridSpec::point_into(std::size_t index, Point& out) const {
  out.resize(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const std::size_t c = index % counts_[i];
    index /= counts_[i];
    if (counts_[i] == 1) {
      out[i] = 0.5 * (domain_.lower()[i] + domain_.upper()[i]);
    } else if (c + 1 == counts_[i]) {
      out[i] = domain_.upper()[i];
    } else {
      out[i] = domain_.lower()[i] + static_cast<double>(c) * step_[i];
    }
  }
}

Point GridSpec::point(std::size_t index) const {
  if (index >= size_) throw ValidationError("grid index out of range");
  Point p;
  point_into(index, p);
  return p;
}

std::vector<Point> GridSpec::points() const {
  std::vector<Point> out(size_);
  for (std::size_t k = 0; k < size_; ++k) point_into(k, out[k]);
  return out;
}

double GridSpec::covering_radius(const NormSpec& spec) const {
  Point half(counts_.size());
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    const double side = domain_.upper()[i] - domain_.lower()[i];
    half[i] = counts_[i] == 1 ? 0.5 * side : 0.5 * step_[i];
  }
  return spec(half);
}

GridValues evaluate_grid(const Objective& objective, const GridSpec& grid) {
  if (grid.size() == 0) throw ValidationError("empty grid");
  GridValues out;
  out.points = grid.points();
  out.values.resize(out.points.size());
  double grid_max = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    out.values[k] = objective(out.points[k]);
    grid_max = std::max(grid_max, out.values[k]);
  }
  if (objective.max_value) {
    out.max_value = *objective.max_value;
  } else {
    out.max_value = grid_max;
    out.max_from_grid = true;
  }
  out.covering_radius = grid.covering_radius(objective.norm);
  return out;
}

PointSet near_optimal_set(const GridValues& values, double eps) {
  if (values.points.empty()) throw ValidationError("empty grid");
  if (!(eps > 0.0)) throw ValidationError("near_optimal_set requires eps > 0");
  PointSet out{{}, values.max_from_grid, values.covering_radius};
  for (std::size_t k = 0; k < values.points.size(); ++k) {
    if (values.gap(k) <= eps + kBoundaryTolerance) out.points.push_back(values.points[k]);
  }
  return out;
}

PointSet near_optimal_set(const Objective& objective, const GridSpec& grid, double eps) {
  return near_optimal_set(evaluate_grid(objective, grid), eps);
}

PointSet layer_set(const GridValues& values, double a, double b) {
  if (values.points.empty()) throw ValidationError("empty grid");
  if (!(a >= 0.0) || !(a < b)) throw ValidationError("layer_set requires 0 <= a < b");
  PointSet out{{}, values.max_from_grid, values.covering_radius};
  for (std::size_t k = 0; k < values.points.size(); ++k) {
    const double g = values.gap(k);
    if (g > a + kBoundaryTolerance && g <= b + kBoundaryTolerance) {
      out.points.push_back(values.points[k]);
    }
  }
  return out;
}

PointSet layer_set(const Objective& objective, const GridSpec& grid, double a, double b) {
  return layer_set(evaluate_grid(objective, grid), a, b);
}

}  // namespace piyavskii
