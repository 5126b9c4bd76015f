// experiment.hpp
//
// One CLI invocation as data. Loaded from a JSON file, then overridden by
// command-line flags; serializes back losslessly.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "piyavskii/optimizers.hpp"
#include "piyavskii/perturbation.hpp"

namespace piyavskii {

enum class Command { run, sweep, bounds, packing, fit, report, describe };

std::string to_string(Command c);
Command command_from_string(const std::string& name);

struct ExperimentConfig {
  Command command = Command::run;
  std::string objective;
  RunConfig run;
  PerturbationModel perturbation = NoPerturbation{};

  // sweep
  std::vector<double> eps_list;
  std::vector<std::size_t> budget_list;
  std::vector<std::uint64_t> seeds;
  std::size_t repetitions = 1;

  // bounds, packing, fit
  std::optional<double> L0;
  std::optional<double> cstar;
  std::optional<double> dstar;
  std::size_t grid_points = 0;  // 0: command default
  std::size_t scales = 8;
  std::size_t first_scale = 0;
  bool piecewise = false;
  std::vector<double> radii;
  std::optional<double> level;  // packing of X_level
  std::optional<std::vector<double>> layer;  // packing of X_(a,b]

  // report
  std::vector<std::string> inputs;

  std::string out;
  std::size_t threads = 1;
};

nlohmann::json experiment_to_json(const ExperimentConfig& config);
/// Unknown keys and ill-typed values raise ValidationError.
ExperimentConfig experiment_from_json(const nlohmann::json& j);

/// Repetition r of a sweep cell runs with this seed.
std::uint64_t repetition_seed(std::uint64_t seed, std::size_t repetition);

}  // namespace piyavskii
