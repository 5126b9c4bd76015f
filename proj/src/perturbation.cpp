#include "piyavskii/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace piyavskii {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t RngStream::bits(std::uint64_t k, std::uint64_t i, std::uint64_t lane) const {
  std::uint64_t h = splitmix64(seed_);
  h = splitmix64(h ^ k);
  h = splitmix64(h ^ (i * 0x9e3779b97f4a7c15ULL));
  return splitmix64(h ^ lane);
}

double RngStream::uniform(std::uint64_t k, std::uint64_t i, std::uint64_t lane) const {
  return (static_cast<double>(bits(k, i, lane) >> 11) + 1.0) * 0x1.0p-53;
}

double RngStream::gaussian(std::uint64_t k, std::uint64_t i) const {
  const double u1 = uniform(k, i, 1);
  const double u2 = uniform(k, i, 2);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string to_string(AdversaryStrategy s) {
  switch (s) {
    case AdversaryStrategy::constant_plus: return "constant_plus";
    case AdversaryStrategy::constant_minus: return "constant_minus";
    case AdversaryStrategy::alternating: return "alternating";
    case AdversaryStrategy::anti_leader: return "anti_leader";
    case AdversaryStrategy::seeded_uniform: return "seeded_uniform";
  }
  return "constant_plus";
}

std::string to_string(NoiseDistribution d) {
  return d == NoiseDistribution::gaussian ? "gaussian" : "bounded_uniform";
}

AdversaryStrategy adversary_strategy_from_string(const std::string& name) {
  for (auto s : {AdversaryStrategy::constant_plus, AdversaryStrategy::constant_minus,
                 AdversaryStrategy::alternating, AdversaryStrategy::anti_leader,
                 AdversaryStrategy::seeded_uniform}) {
    if (to_string(s) == name) return s;
  }
  throw ValidationError("unknown adversary strategy: " + name);
}

NoiseDistribution noise_distribution_from_string(const std::string& name) {
  if (name == "gaussian") return NoiseDistribution::gaussian;
  if (name == "bounded_uniform") return NoiseDistribution::bounded_uniform;
  throw ValidationError("unknown noise distribution: " + name);
}

PerturbationModel make_bounded_adversary(double alpha, AdversaryStrategy strategy) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ValidationError("adversary needs alpha >= 0");
  return BoundedAdversary{alpha, strategy};
}

PerturbationModel make_subgaussian(double sigma0, NoiseDistribution distribution) {
  if (!(sigma0 >= 0.0) || !std::isfinite(sigma0)) throw ValidationError("noise needs sigma0 >= 0");
  return SubgaussianNoise{sigma0, distribution};
}

bool is_deterministic(const PerturbationModel& model) {
  return !std::holds_alternative<SubgaussianNoise>(model);
}

std::string describe(const PerturbationModel& model) {
  std::ostringstream os;
  os.precision(17);
  if (std::holds_alternative<NoPerturbation>(model)) {
    os << "none";
  } else if (const auto* a = std::get_if<BoundedAdversary>(&model)) {
    os << "bounded_adversary(alpha=" << a->alpha << ", " << to_string(a->strategy) << ")";
  } else {
    const auto& s = std::get<SubgaussianNoise>(model);
    os << "subgaussian(sigma0=" << s.sigma0 << ", " << to_string(s.distribution) << ")";
  }
  return os.str();
}

namespace {

double draw_noise(const SubgaussianNoise& noise, const RngStream& rng, std::size_t k, std::size_t i) {
  if (noise.sigma0 == 0.0) return 0.0;
  if (noise.distribution == NoiseDistribution::gaussian) return noise.sigma0 * rng.gaussian(k, i);
  return noise.sigma0 * (2.0 * rng.uniform(k, i) - 1.0);
}

double adversary(const BoundedAdversary& adv, const RngStream& rng, std::size_t k, std::size_t i,
                 double f_value, HistoryView history) {
  const double a = adv.alpha;
  double xi = 0.0;
  switch (adv.strategy) {
    case AdversaryStrategy::constant_plus: xi = a; break;
    case AdversaryStrategy::constant_minus: xi = -a; break;
    case AdversaryStrategy::alternating: xi = (k % 2 == 1) ? a : -a; break;
    case AdversaryStrategy::anti_leader: {
      double best = -std::numeric_limits<double>::infinity();
      for (double y : history.observations) best = std::max(best, y);
      xi = (history.observations.empty() || f_value >= best - a) ? -a : a;
      break;
    }
    case AdversaryStrategy::seeded_uniform: xi = a * (2.0 * rng.uniform(k, i) - 1.0); break;
  }
  return std::clamp(xi, -a, a);
}

}  // namespace

double perturb(const PerturbationModel& model, const RngStream& rng, std::size_t k, std::size_t i,
               double f_value, HistoryView history) {
  if (const auto* adv = std::get_if<BoundedAdversary>(&model)) {
    return adversary(*adv, rng, k, i, f_value, history);
  }
  if (const auto* noise = std::get_if<SubgaussianNoise>(&model)) return draw_noise(*noise, rng, k, i);
  return 0.0;
}

std::size_t minibatch_size(std::size_t k, double sigma1, double alpha, double delta) {
  if (k == 0) throw ValidationError("minibatch_size: k must be >= 1");
  if (!(sigma1 > 0.0)) throw ValidationError("minibatch_size: sigma1 must be > 0");
  if (!(alpha > 0.0)) throw ValidationError("minibatch_size: alpha must be > 0");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("minibatch_size: delta must lie in (0, 1)");
  const double kk = static_cast<double>(k);
  const double m = (2.0 * sigma1 * sigma1 / (alpha * alpha)) * std::log(2.0 * kk * (kk + 1.0) / delta);
  return static_cast<std::size_t>(std::max(1.0, std::ceil(m)));
}

BatchAverage batch_average(const SubgaussianNoise& model, const RngStream& rng, std::size_t k,
                           std::size_t m, double f_value) {
  if (m == 0) throw ValidationError("batch_average: batch size must be >= 1");
  double sum = 0.0;
  for (std::size_t i = 1; i <= m; ++i) sum += draw_noise(model, rng, k, i);
  const double xi_bar = sum / static_cast<double>(m);
  return {f_value + xi_bar, xi_bar, m};
}

double noise_hard_bound(const SubgaussianNoise& model) {
  if (model.sigma0 == 0.0) return 0.0;
  return model.distribution == NoiseDistribution::bounded_uniform
             ? model.sigma0
             : std::numeric_limits<double>::infinity();
}

}  // namespace piyavskii
