#include "piyavskii/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace piyavskii {

UpperEnvelope::UpperEnvelope(double L1, double alpha, NormSpec norm)
    : L1_(L1), alpha_(alpha), norm_(std::move(norm)) {
  if (!(L1 > 0.0) || !std::isfinite(L1)) throw ValidationError("envelope requires L1 > 0");
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("envelope requires alpha >= 0");
}

void UpperEnvelope::add(Sample sample) {
  if (!samples_.empty() && sample.x.size() != samples_.front().x.size()) {
    throw ValidationError("envelope sample dimension mismatch");
  }
  samples_.push_back(std::move(sample));
}

double UpperEnvelope::cone(std::size_t i, std::span<const double> x) const {
  const Sample& s = samples_[i];
  return s.y + L1_ * norm_.distance(s.x, x) + alpha_;
}

double UpperEnvelope::evaluate(std::span<const double> x) const {
  if (samples_.empty()) throw ValidationError("cannot evaluate an empty envelope");
  double v = std::numeric_limits<double>::infinity();
  for (const Sample& s : samples_) v = std::min(v, s.y + L1_ * norm_.distance(s.x, x));
  return v + alpha_;
}

double UpperEnvelope::apex_bound(std::size_t i) const {
  if (i >= samples_.size()) throw ValidationError("sample index out of range");
  const double v = evaluate(samples_[i].x);
  if (v > samples_[i].y + alpha_) {
    throw std::logic_error("envelope exceeds its own apex at a sample point");
  }
  return v;
}

double evaluate(const UpperEnvelope& env, std::span<const double> x) { return env.evaluate(x); }

double envelope_at_sample_bound(const UpperEnvelope& env, std::size_t i) {
  return env.apex_bound(i);
}

EnvelopeMaximum argmax_1d(const UpperEnvelope& env, const BoxDomain& domain) {
  if (domain.dimension() != 1) throw ValidationError("argmax_1d requires a 1-D domain");
  if (env.empty()) throw ValidationError("cannot maximise an empty envelope");
  const auto& samples = env.samples();
  const double L = env.L1() * env.norm().weight(0);
  const double lo = domain.lower()[0];
  const double hi = domain.upper()[0];

  std::vector<std::size_t> order(samples.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return samples[a].x[0] < samples[b].x[0]; });

  // Merge coincident apexes, keeping the lowest observation.
  std::vector<double> xs;
  std::vector<double> h;
  for (std::size_t id : order) {
    const double x = samples[id].x[0];
    if (!xs.empty() && xs.back() == x) {
      h.back() = std::min(h.back(), samples[id].y);
    } else {
      xs.push_back(x);
      h.push_back(samples[id].y);
    }
  }
  // Two-pass distance transform: h[i] becomes min_j { y_j + L |x_j - x_i| }.
  for (std::size_t i = 1; i < xs.size(); ++i) h[i] = std::min(h[i], h[i - 1] + L * (xs[i] - xs[i - 1]));
  for (std::size_t i = xs.size() - 1; i-- > 0;) h[i] = std::min(h[i], h[i + 1] + L * (xs[i + 1] - xs[i]));

  EnvelopeMaximum best{{lo}, -std::numeric_limits<double>::infinity(), 0.0};
  auto consider = [&](double x, double v) {
    if (v > best.value) {
      best.x[0] = x;
      best.value = v;
    }
  };
  // Left of the first apex the envelope decreases towards the apex.
  if (lo <= xs.front()) consider(lo, h.front() + L * (xs.front() - lo));
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const double a = xs[i];
    const double b = xs[i + 1];
    if (b < lo || a > hi) continue;
    double x = 0.5 * (a + b) + (h[i + 1] - h[i]) / (2.0 * L);
    x = std::clamp(x, std::max(a, lo), std::min(b, hi));
    consider(x, std::min(h[i] + L * (x - a), h[i + 1] + L * (b - x)));
  }
  if (hi >= xs.back()) consider(hi, h.back() + L * (hi - xs.back()));
  best.value += env.alpha();
  return best;
}

EnvelopeMaximum argmax_grid(const UpperEnvelope& env, const BoxDomain& domain, const GridSpec& grid) {
  if (grid.size() == 0) throw ValidationError("empty grid");
  if (grid.dimension() != domain.dimension()) throw ValidationError("grid dimension mismatch");
  EnvelopeMaximum best{{}, -std::numeric_limits<double>::infinity(),
                       env.L1() * grid.covering_radius(env.norm())};
  Point p;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    grid.point_into(k, p);
    const double v = env.evaluate(p);
    // Grid enumeration order is not lexicographic, so compare coordinates on ties.
    if (v > best.value ||
        (v == best.value && std::lexicographical_compare(p.begin(), p.end(), best.x.begin(), best.x.end()))) {
      best.x = p;
      best.value = v;
    }
  }
  return best;
}

IncrementalGridMaximizer::IncrementalGridMaximizer(const GridSpec& grid, const NormSpec& norm,
                                                   double L1, double alpha)
    : points_(grid.points()),
      values_(points_.size(), std::numeric_limits<double>::infinity()),
      norm_(norm),
      L1_(L1),
      alpha_(alpha),
      gap_(L1 * grid.covering_radius(norm)) {
  if (points_.empty()) throw ValidationError("empty grid");
}

void IncrementalGridMaximizer::add(const Sample& sample) {
  for (std::size_t k = 0; k < points_.size(); ++k) {
    values_[k] = std::min(values_[k], sample.y + L1_ * norm_.distance(sample.x, points_[k]));
  }
  any_ = true;
}

EnvelopeMaximum IncrementalGridMaximizer::best() const {
  if (!any_) throw ValidationError("cannot maximise an empty envelope");
  std::size_t arg = 0;
  for (std::size_t k = 1; k < points_.size(); ++k) {
    const double v = values_[k];
    if (v > values_[arg] ||
        (v == values_[arg] && std::lexicographical_compare(points_[k].begin(), points_[k].end(),
                                                           points_[arg].begin(), points_[arg].end()))) {
      arg = k;
    }
  }
  return {points_[arg], values_[arg] + alpha_, gap_};
}

}  // namespace piyavskii
