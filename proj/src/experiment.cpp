#include "piyavskii/experiment.hpp"

#include <algorithm>
#include <array>

#include "piyavskii/trace_io.hpp"

namespace piyavskii {

using nlohmann::json;

namespace {

constexpr std::array<const char*, 7> kCommandNames = {"run", "sweep", "bounds", "packing", "fit", "report",
                                                      "describe"};

}  // namespace

std::string to_string(Command c) { return kCommandNames[static_cast<std::size_t>(c)]; }

Command command_from_string(const std::string& name) {
  for (std::size_t i = 0; i < kCommandNames.size(); ++i) {
    if (name == kCommandNames[i]) return static_cast<Command>(i);
  }
  throw ValidationError("unknown command: " + name);
}

json experiment_to_json(const ExperimentConfig& c) {
  json j;
  j["command"] = to_string(c.command);
  j["objective"] = c.objective;
  j["run"] = run_config_to_json(c.run);
  j["perturbation"] = perturbation_to_json(c.perturbation);
  j["eps_list"] = c.eps_list;
  j["budget_list"] = c.budget_list;
  j["seeds"] = c.seeds;
  j["repetitions"] = c.repetitions;
  if (c.L0) j["L0"] = *c.L0;
  if (c.cstar) j["cstar"] = *c.cstar;
  if (c.dstar) j["dstar"] = *c.dstar;
  j["grid_points"] = c.grid_points;
  j["scales"] = c.scales;
  j["first_scale"] = c.first_scale;
  j["piecewise"] = c.piecewise;
  j["radii"] = c.radii;
  if (c.level) j["level"] = *c.level;
  if (c.layer) j["layer"] = *c.layer;
  j["inputs"] = c.inputs;
  j["out"] = c.out;
  j["threads"] = c.threads;
  return j;
}

ExperimentConfig experiment_from_json(const json& j) {
  static const std::vector<std::string> known = {
      "command", "objective", "run",         "perturbation", "eps_list", "budget_list", "seeds",
      "repetitions", "L0",    "cstar",       "dstar",        "grid_points", "scales", "first_scale",
      "piecewise", "radii",   "level",       "layer",        "inputs",   "out",         "threads"};
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError("unknown config key: " + key);
    }
  }
  ExperimentConfig c;
  try {
    if (j.contains("command")) c.command = command_from_string(j.at("command").get<std::string>());
    c.objective = j.value("objective", std::string());
    if (j.contains("run")) c.run = run_config_from_json(j.at("run"));
    if (j.contains("perturbation")) c.perturbation = perturbation_from_json(j.at("perturbation"));
    c.eps_list = j.value("eps_list", std::vector<double>{});
    c.budget_list = j.value("budget_list", std::vector<std::size_t>{});
    c.seeds = j.value("seeds", std::vector<std::uint64_t>{});
    c.repetitions = j.value("repetitions", std::size_t{1});
    if (j.contains("L0")) c.L0 = j.at("L0").get<double>();
    if (j.contains("cstar")) c.cstar = j.at("cstar").get<double>();
    if (j.contains("dstar")) c.dstar = j.at("dstar").get<double>();
    c.grid_points = j.value("grid_points", std::size_t{0});
    c.scales = j.value("scales", std::size_t{8});
    c.first_scale = j.value("first_scale", std::size_t{0});
    c.piecewise = j.value("piecewise", false);
    c.radii = j.value("radii", std::vector<double>{});
    if (j.contains("level")) c.level = j.at("level").get<double>();
    if (j.contains("layer")) c.layer = j.at("layer").get<std::vector<double>>();
    c.inputs = j.value("inputs", std::vector<std::string>{});
    c.out = j.value("out", std::string());
    c.threads = j.value("threads", std::size_t{1});
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad config: ") + e.what());
  }
  return c;
}

std::uint64_t repetition_seed(std::uint64_t seed, std::size_t repetition) {
  return seed + static_cast<std::uint64_t>(repetition) * 0x9E3779B97F4A7C15ULL;
}

}  // namespace piyavskii
