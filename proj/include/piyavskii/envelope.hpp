// envelope.hpp
//
// The piecewise-conic upper envelope  fhat(x) = min_i { y_i + L1 ||x_i - x|| + alpha }
// and its maximisation: exact in dimension 1, grid-certified in higher
// dimension.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "piyavskii/domain.hpp"

namespace piyavskii {

struct Sample {
  std::size_t index = 0;  // 1-based iteration index
  Point x;
  double y = 0.0;
  std::size_t batch = 1;
};

class UpperEnvelope {
 public:
  UpperEnvelope(double L1, double alpha, NormSpec norm);

  double L1() const { return L1_; }
  double alpha() const { return alpha_; }
  const NormSpec& norm() const { return norm_; }
  const std::vector<Sample>& samples() const { return samples_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }

  void add(Sample sample);

  /// Value of the single cone erected at sample i.
  double cone(std::size_t i, std::span<const double> x) const;
  double evaluate(std::span<const double> x) const;

  /// Evaluates the envelope at the i-th sample (0-based) and checks the apex
  /// bound fhat(x_i) <= y_i + alpha. Throws std::logic_error on violation.
  double apex_bound(std::size_t i) const;

 private:
  double L1_;
  double alpha_;
  NormSpec norm_;
  std::vector<Sample> samples_;
};

double evaluate(const UpperEnvelope& env, std::span<const double> x);
double envelope_at_sample_bound(const UpperEnvelope& env, std::size_t i);

struct EnvelopeMaximum {
  Point x;
  double value = 0.0;
  double gap = 0.0;  // certified: value >= sup_D fhat - gap
};

/// Exact global maximiser over an interval. Runs in O(k log k): after sorting
/// the apexes, the envelope restricted to a gap between consecutive apexes is
/// the minimum of two cones whose apex heights are the envelope values there.
/// Ties resolve to the smallest coordinate.
EnvelopeMaximum argmax_1d(const UpperEnvelope& env, const BoxDomain& domain);

/// Best grid point with certificate gap L1 * covering_radius(grid).
EnvelopeMaximum argmax_grid(const UpperEnvelope& env, const BoxDomain& domain, const GridSpec& grid);

/// Grid maximiser that keeps the running minimum over cones at every grid
/// point, so each new sample costs one pass over the grid.
class IncrementalGridMaximizer {
 public:
  IncrementalGridMaximizer(const GridSpec& grid, const NormSpec& norm, double L1, double alpha);

  void add(const Sample& sample);
  EnvelopeMaximum best() const;
  double gap() const { return gap_; }

 private:
  std::vector<Point> points_;
  std::vector<double> values_;
  NormSpec norm_;
  double L1_;
  double alpha_;
  double gap_;
  bool any_ = false;
};

}  // namespace piyavskii
