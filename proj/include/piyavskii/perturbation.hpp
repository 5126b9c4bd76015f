// perturbation.hpp
//
// Observation corruption: bounded deterministic adversaries and subgaussian
// noise, plus the mini-batch size rule that averages noise down to a target
// deviation with a union-bound confidence.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>

#include "piyavskii/domain.hpp"

namespace piyavskii {

/// Counter-based stream: every draw is a pure function of (seed, k, i, lane),
/// so a change of batch size at one iteration leaves all other draws intact.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed = 0) : seed_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t bits(std::uint64_t k, std::uint64_t i, std::uint64_t lane = 0) const;
  /// Uniform on (0, 1].
  double uniform(std::uint64_t k, std::uint64_t i, std::uint64_t lane = 0) const;
  double gaussian(std::uint64_t k, std::uint64_t i) const;

 private:
  std::uint64_t seed_;
};

enum class AdversaryStrategy { constant_plus, constant_minus, alternating, anti_leader, seeded_uniform };
enum class NoiseDistribution { gaussian, bounded_uniform };

std::string to_string(AdversaryStrategy s);
std::string to_string(NoiseDistribution d);
AdversaryStrategy adversary_strategy_from_string(const std::string& name);
NoiseDistribution noise_distribution_from_string(const std::string& name);

struct NoPerturbation {};

struct BoundedAdversary {
  double alpha = 0.0;
  AdversaryStrategy strategy = AdversaryStrategy::constant_plus;
};

/// sigma0-subgaussian noise. The bounded-uniform variant is uniform on
/// [-sigma0, sigma0], which is sigma0-subgaussian by Hoeffding's lemma.
struct SubgaussianNoise {
  double sigma0 = 1.0;
  NoiseDistribution distribution = NoiseDistribution::gaussian;
};

using PerturbationModel = std::variant<NoPerturbation, BoundedAdversary, SubgaussianNoise>;

PerturbationModel make_bounded_adversary(double alpha, AdversaryStrategy strategy);
PerturbationModel make_subgaussian(double sigma0, NoiseDistribution distribution);

bool is_deterministic(const PerturbationModel& model);
std::string describe(const PerturbationModel& model);

/// What an adaptive adversary may look at: the queries x_1..x_k (including the
/// current one) and the observations y_1..y_{k-1} it has already produced.
struct HistoryView {
  std::span<const Point> queries;
  std::span<const double> observations;
};

/// Perturbation xi_{k,i} for the i-th evaluation at iteration k (both 1-based).
double perturb(const PerturbationModel& model, const RngStream& rng, std::size_t k, std::size_t i,
               double f_value, HistoryView history);

/// m_k = ceil( (2 sigma1^2 / alpha^2) ln(2 k (k+1) / delta) ).
std::size_t minibatch_size(std::size_t k, double sigma1, double alpha, double delta);

struct BatchAverage {
  double y = 0.0;
  double xi_bar = 0.0;
  std::size_t evaluations = 0;
};

/// Draws m noise values for iteration k and averages them.
BatchAverage batch_average(const SubgaussianNoise& model, const RngStream& rng, std::size_t k,
                           std::size_t m, double f_value);

/// Hard bound |xi| <= bound of a single noise draw, infinity for Gaussian noise.
double noise_hard_bound(const SubgaussianNoise& model);

}  // namespace piyavskii
