// Command-line front end: run, sweep, bounds, packing, fit, report, describe.
//
// Exit codes: 0 success, 1 internal error, 2 validation error, 3 iteration
// cap reached, 4 audit failure (report only). Errors are printed to stderr as
// one JSON object.

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "piyavskii/analysis.hpp"
#include "piyavskii/bench.hpp"
#include "piyavskii/experiment.hpp"
#include "piyavskii/optimizers.hpp"
#include "piyavskii/trace_io.hpp"

namespace {

using nlohmann::json;
using namespace piyavskii;

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIterationCap = 3;
constexpr int kExitAudit = 4;

constexpr const char* kToolVersion = "1.0.0";

struct CliError {
  int code;
  std::string kind;
  std::string message;
};

// Every flag is optional so that only flags actually given override the file.
struct Flags {
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> threads;

  std::optional<std::string> algo;
  std::optional<std::string> fn;
  std::optional<double> l1;
  std::optional<double> alpha;
  std::optional<std::size_t> budget;
  std::optional<double> eps;
  std::optional<double> sigma1;
  std::optional<double> delta;
  std::optional<std::vector<double>> x1;
  std::optional<std::vector<std::size_t>> grid;
  std::optional<std::size_t> iteration_cap;

  std::optional<std::string> perturbation;
  std::optional<std::string> strategy;
  std::optional<double> perturbation_alpha;
  std::optional<double> sigma0;
  std::optional<std::string> noise;

  std::optional<std::vector<double>> eps_list;
  std::optional<std::vector<std::size_t>> budget_list;
  std::optional<std::vector<std::uint64_t>> seeds;
  std::optional<std::size_t> repetitions;

  std::optional<double> l0;
  std::optional<double> cstar;
  std::optional<double> dstar;
  std::optional<std::size_t> grid_points;
  std::optional<std::size_t> scales;
  std::optional<std::size_t> first_scale;
  bool piecewise = false;
  std::optional<std::vector<double>> radii;
  std::optional<double> level;
  std::optional<std::vector<double>> layer;

  std::vector<std::string> inputs;
};

template <typename T>
void apply(const std::optional<T>& flag, T& target) {
  if (flag) target = *flag;
}

template <typename T>
void apply(const std::optional<T>& flag, std::optional<T>& target) {
  if (flag) target = *flag;
}

ExperimentConfig load_config(const Flags& f, Command command) {
  ExperimentConfig c;
  if (f.config) {
    std::ifstream is(*f.config);
    if (!is) throw ValidationError("cannot read config file " + *f.config);
    json j;
    try {
      j = json::parse(is);
    } catch (const json::exception& e) {
      throw ValidationError(std::string("config is not valid JSON: ") + e.what());
    }
    c = experiment_from_json(j);
  }
  c.command = command;
  apply(f.fn, c.objective);
  apply(f.out, c.out);
  apply(f.threads, c.threads);
  apply(f.seed, c.run.seed);
  if (f.algo) c.run.algorithm = algorithm_from_string(*f.algo);
  apply(f.l1, c.run.L1);
  apply(f.alpha, c.run.alpha);
  apply(f.budget, c.run.budget);
  apply(f.eps, c.run.eps);
  apply(f.sigma1, c.run.sigma1);
  apply(f.delta, c.run.delta);
  apply(f.x1, c.run.x1);
  apply(f.grid, c.run.grid);
  apply(f.iteration_cap, c.run.iteration_cap);

  if (f.perturbation || f.strategy || f.perturbation_alpha || f.sigma0 || f.noise) {
    json pj = perturbation_to_json(c.perturbation);
    if (f.perturbation) {
      if (*f.perturbation != pj.value("kind", "none")) pj = json{{"kind", *f.perturbation}};
    }
    const std::string kind = pj.value("kind", "none");
    if (kind == "adversary") {
      if (f.strategy) pj["strategy"] = *f.strategy;
      if (f.perturbation_alpha) {
        pj["alpha"] = *f.perturbation_alpha;
      } else if (!pj.contains("alpha")) {
        pj["alpha"] = c.run.alpha.value_or(0.0);
      }
    } else if (kind == "noise") {
      if (f.noise) pj["distribution"] = *f.noise;
      if (f.sigma0) {
        pj["sigma0"] = *f.sigma0;
      } else if (!pj.contains("sigma0")) {
        pj["sigma0"] = c.run.sigma1.value_or(1.0);
      }
    } else if (kind == "none") {
      if (f.strategy || f.perturbation_alpha || f.sigma0 || f.noise) {
        throw ValidationError("perturbation parameters given without --perturbation adversary|noise");
      }
    }
    c.perturbation = perturbation_from_json(pj);
  } else if (c.run.algorithm == Algorithm::stochastic_eps && std::holds_alternative<NoPerturbation>(c.perturbation)) {
    c.perturbation = make_subgaussian(c.run.sigma1.value_or(1.0), NoiseDistribution::gaussian);
  }

  apply(f.eps_list, c.eps_list);
  apply(f.budget_list, c.budget_list);
  apply(f.seeds, c.seeds);
  apply(f.repetitions, c.repetitions);
  apply(f.l0, c.L0);
  apply(f.cstar, c.cstar);
  apply(f.dstar, c.dstar);
  apply(f.grid_points, c.grid_points);
  apply(f.scales, c.scales);
  apply(f.first_scale, c.first_scale);
  if (f.piecewise) c.piecewise = true;
  apply(f.radii, c.radii);
  apply(f.level, c.level);
  apply(f.layer, c.layer);
  if (!f.inputs.empty()) c.inputs = f.inputs;
  if (c.threads == 0) throw ValidationError("--threads must be >= 1");
  if (command == Command::run && f.config) {
    const auto header = header_path(c.out.empty() ? "trace.csv" : c.out);
    if (std::filesystem::weakly_canonical(header) == std::filesystem::weakly_canonical(*f.config)) {
      throw ValidationError("trace header " + header.string() + " would overwrite the config file");
    }
  }
  return c;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void emit(const ExperimentConfig& c, const std::string& text, const char* default_name = nullptr) {
  if (!c.out.empty()) {
    write_file_atomic(c.out, text);
  } else if (default_name) {
    write_file_atomic(default_name, text);
  } else {
    std::cout << text;
  }
}

const NamedObjective& require_objective(const ExperimentConfig& c) {
  if (c.objective.empty()) throw ValidationError("no objective given (--fn)");
  return lookup(c.objective);
}

std::size_t default_grid_points(const Objective& o, std::size_t requested, std::size_t one_d, std::size_t multi_d) {
  if (requested) return requested;
  return o.dimension() == 1 ? one_d : multi_d;
}

// ---------------------------------------------------------------------------

int cmd_run(const ExperimentConfig& c) {
  const NamedObjective& named = require_objective(c);
  RunTrace trace = run(named.objective, c.perturbation, c.run);
  trace.objective_name = named.name;
  const std::string path = c.out.empty() ? "trace.csv" : c.out;
  json meta{{"timestamp", utc_timestamp()}, {"tool_version", kToolVersion}};
  write_trace(path, trace, named.objective, c.perturbation, meta);

  json summary{{"trace", path},
               {"header", header_path(path).string()},
               {"objective", named.name},
               {"algorithm", to_string(c.run.algorithm)},
               {"stop_reason", to_string(trace.stop)},
               {"iterations", trace.iterations()},
               {"evaluations", trace.evaluations()},
               {"returned_point", trace.returned_point}};
  if (named.objective.max_value) {
    const RegretReport rr = simple_regret(trace, named.objective);
    summary["regret"] = rr.regret;
    if (rr.guarantee) summary["guarantee"] = *rr.guarantee;
  }
  std::cout << summary.dump(2) << "\n";
  if (trace.stop == StopReason::iteration_cap) {
    throw CliError{kExitIterationCap, "iteration_cap",
                   "iteration cap of " + std::to_string(c.run.iteration_cap) + " reached before the stopping rule"};
  }
  return kExitOk;
}

struct CellResult {
  double param = 0.0;
  std::uint64_t seed = 0;
  std::size_t repetition = 0;
  std::optional<double> regret;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  std::string stop;
};

int cmd_sweep(const ExperimentConfig& c) {
  const NamedObjective& named = require_objective(c);
  if (c.seeds.empty()) throw ValidationError("sweep needs a nonempty seed list");
  if (c.repetitions == 0) throw ValidationError("repetitions must be >= 1");
  const bool by_budget = c.run.algorithm == Algorithm::budget;
  std::vector<double> params;
  if (by_budget) {
    if (c.budget_list.empty()) throw ValidationError("budget sweep needs a nonempty budget list");
    for (auto n : c.budget_list) params.push_back(static_cast<double>(n));
  } else {
    if (c.eps_list.empty()) throw ValidationError("eps sweep needs a nonempty eps list");
    params = c.eps_list;
  }

  std::vector<CellResult> cells;
  for (double p : params) {
    for (auto s : c.seeds) {
      for (std::size_t r = 0; r < c.repetitions; ++r) cells.push_back({p, s, r, std::nullopt, 0, 0, ""});
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      CellResult& cell = cells[i];
      RunConfig rc = c.run;
      rc.seed = repetition_seed(cell.seed, cell.repetition);
      if (by_budget) {
        rc.budget = static_cast<std::size_t>(cell.param);
      } else {
        rc.eps = cell.param;
      }
      try {
        const RunTrace t = run(named.objective, c.perturbation, rc);
        cell.iterations = t.iterations();
        cell.evaluations = t.evaluations();
        cell.stop = to_string(t.stop);
        if (named.objective.max_value) cell.regret = simple_regret(t, named.objective).regret;
      } catch (const std::exception& e) {
        cell.stop = std::string("error: ") + e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t n_threads = std::min(c.threads, cells.size());
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  auto quote = [](std::string s) {
    for (char& ch : s) {
      if (ch == ',' || ch == '\n' || ch == '"') ch = ' ';
    }
    return s;
  };
  std::ostringstream os;
  os << "kind,cell,param,seed,repetition,regret,iterations,evaluations,stop,fit,slope,intercept,r_squared\n";
  std::vector<double> lx, ly, nx, it_x, it_y;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const auto& cell = cells[i];
    os << "cell," << i << ',' << format_double(cell.param) << ',' << cell.seed << ',' << cell.repetition << ','
       << (cell.regret ? format_double(*cell.regret) : "") << ',' << cell.iterations << ',' << cell.evaluations
       << ',' << quote(cell.stop) << ",,,,\n";
    if (cell.stop.rfind("error", 0) == 0) continue;
    if (cell.regret && *cell.regret > 0.0) {
      lx.push_back(std::log(cell.param));
      ly.push_back(std::log(*cell.regret));
      nx.push_back(cell.param);
    }
    if (!by_budget) {
      it_x.push_back(std::log(1.0 / cell.param));
      it_y.push_back(std::log(static_cast<double>(cell.iterations)));
    }
  }
  auto summary = [&](const char* name, const std::vector<double>& x, const std::vector<double>& y) {
    os << "summary,,,,,,,,," << name << ',';
    try {
      const LineFit fit = least_squares(x, y);
      os << format_double(fit.slope) << ',' << format_double(fit.intercept) << ',' << format_double(fit.r_squared);
    } catch (const ValidationError&) {
      os << ",,";
    }
    os << '\n';
  };
  if (by_budget) {
    summary("loglog_regret_vs_n", lx, ly);
    summary("semilog_regret_vs_n", nx, ly);
  } else {
    summary("loglog_regret_vs_eps", lx, ly);
    summary("loglog_iterations_vs_inv_eps", it_x, it_y);
  }
  emit(c, os.str());
  return kExitOk;
}

json bound_report_json(const BoundReport& r) {
  json inputs{{"eps", r.inputs.eps}, {"alpha", r.inputs.alpha}, {"L0", *r.inputs.L0}, {"L1", r.inputs.L1},
              {"grid_points", r.inputs.grid_points}};
  inputs["cstar"] = r.inputs.cstar ? json(*r.inputs.cstar) : json(nullptr);
  inputs["dstar"] = r.inputs.dstar ? json(*r.inputs.dstar) : json(nullptr);
  inputs["sigma1"] = r.inputs.sigma1 ? json(*r.inputs.sigma1) : json(nullptr);
  inputs["delta"] = r.inputs.delta ? json(*r.inputs.delta) : json(nullptr);
  json entries = json::array();
  for (const auto& e : r.entries) {
    json je{{"name", e.name}, {"note", e.note}};
    je["value"] = std::isnan(e.value) ? json(nullptr) : json(e.value);
    if (e.upper) je["upper"] = *e.upper;
    entries.push_back(je);
  }
  return json{{"eps0", r.eps0}, {"inputs", inputs}, {"bounds", entries}};
}

int cmd_bounds(const ExperimentConfig& c) {
  const NamedObjective& named = require_objective(c);
  if (!c.run.eps) throw ValidationError("bounds need --eps");
  BoundRequest req;
  req.eps = *c.run.eps;
  req.alpha = c.run.alpha.value_or(0.0);
  req.L0 = c.L0;
  req.L1 = c.run.L1;
  req.cstar = c.cstar;
  req.dstar = c.dstar;
  req.sigma1 = c.run.sigma1;
  req.delta = c.run.delta;
  req.grid_points = default_grid_points(named.objective, c.grid_points, 2001, 401);
  json j = bound_report_json(compute_bounds(named.objective, req));
  j["objective"] = named.name;
  emit(c, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_packing(const ExperimentConfig& c) {
  const NamedObjective& named = require_objective(c);
  const Objective& o = named.objective;
  if (c.radii.empty()) throw ValidationError("packing needs a nonempty radius list (--radii)");
  const GridSpec grid = GridSpec::uniform(o.domain, default_grid_points(o, c.grid_points, 10001, 201));
  PointSet set;
  std::string descriptor;
  if (c.layer) {
    if (c.layer->size() != 2) throw ValidationError("--layer takes two values a b");
    set = layer_set(o, grid, (*c.layer)[0], (*c.layer)[1]);
    descriptor = "X_(" + format_double((*c.layer)[0]) + ";" + format_double((*c.layer)[1]) + "]";
  } else if (c.level) {
    set = near_optimal_set(o, grid, *c.level);
    descriptor = "X_" + format_double(*c.level);
  } else {
    set.points = grid.points();
    descriptor = "grid";
  }
  std::ostringstream os;
  os << "set,r,lower,upper,exact\n";
  for (double r : c.radii) {
    const PackingResult p = packing_number(set.points, r, o.norm);
    os << descriptor << ',' << format_double(r) << ',' << p.lower << ',' << p.upper << ','
       << (p.exact ? std::to_string(*p.exact) : "") << '\n';
  }
  emit(c, os.str());
  return kExitOk;
}

int cmd_fit(const ExperimentConfig& c) {
  const NamedObjective& named = require_objective(c);
  const Objective& o = named.objective;
  const double L0 = c.L0 ? *c.L0 : o.L0.value_or(0.0);
  const GridSpec grid = GridSpec::uniform(o.domain, default_grid_points(o, c.grid_points, 200001, 801));
  const DimensionFit fit = fit_near_optimality(o, grid, L0, c.scales, c.first_scale);
  json j{{"objective", named.name}, {"L0", L0},           {"scales", fit.scales},
         {"packings", fit.packings}, {"dstar", fit.dstar}, {"cstar", fit.cstar},
         {"r_squared", fit.r_squared}};
  if (c.piecewise) {
    const PiecewiseFit pw = fit_piecewise(fit);
    j["piecewise"] = {{"breakpoint", pw.breakpoint},
                      {"coarse_slope", pw.coarse.slope},
                      {"fine_slope", pw.fine.slope},
                      {"coarse_r_squared", pw.coarse.r_squared},
                      {"fine_r_squared", pw.fine.r_squared}};
  }
  emit(c, j.dump(2) + "\n");
  return kExitOk;
}

int cmd_report(const ExperimentConfig& c) {
  if (c.inputs.empty()) throw ValidationError("report needs at least one trace file");
  std::ostringstream curves, audits;
  curves << "trace,k,regret\n";
  audits << "trace,audit,passed,worst_margin,checks\n";
  bool all_passed = true;
  json table = json::array();
  for (const auto& path : c.inputs) {
    const LoadedTrace lt = read_trace(path);
    const Objective& o = lookup(lt.trace.objective_name).objective;
    if (o.max_value) {
      const RegretReport rr = simple_regret(lt.trace, o);
      for (std::size_t k = 0; k < rr.curve.size(); ++k) {
        curves << path << ',' << (k + 1) << ',' << format_double(rr.curve[k]) << '\n';
      }
    }
    for (const auto& a : audit_all(lt.trace, o)) {
      all_passed = all_passed && a.passed;
      audits << path << ',' << a.name << ',' << (a.passed ? "pass" : "FAIL") << ',' << format_double(a.worst_margin)
             << ',' << a.checks << '\n';
      table.push_back({{"trace", path}, {"audit", a.name}, {"passed", a.passed}, {"worst_margin", a.worst_margin},
                       {"checks", a.checks}});
    }
  }
  const std::filesystem::path out = c.out.empty() ? "report.csv" : c.out;
  std::filesystem::path audit_path = out;
  audit_path.replace_extension(".audit.csv");
  write_file_atomic(out, curves.str());
  write_file_atomic(audit_path, audits.str());
  std::cout << json{{"regret_curves", out.string()}, {"audits", audit_path.string()}, {"all_passed", all_passed},
                    {"results", table}}
                   .dump(2)
            << "\n";
  return all_passed ? kExitOk : kExitAudit;
}

json describe_objective(const NamedObjective& n) {
  const Objective& o = n.objective;
  json j{{"name", n.name},
         {"description", n.description},
         {"dimension", o.dimension()},
         {"domain", {{"lower", o.domain.lower()}, {"upper", o.domain.upper()}}},
         {"norm", to_string(o.norm.kind())},
         {"has_gap_profile", static_cast<bool>(o.gap_profile)}};
  if (!o.norm.weights().empty()) j["norm_weights"] = o.norm.weights();
  if (o.L0) {
    j["L0"] = *o.L0;
    j["eps0"] = o.eps0();
  }
  if (o.maximizer) j["x_star"] = *o.maximizer;
  if (o.max_value) j["f_star"] = *o.max_value;
  if (o.cstar) j["cstar"] = *o.cstar;
  if (o.dstar) j["dstar"] = *o.dstar;
  return j;
}

int cmd_describe(const ExperimentConfig& c) {
  json j;
  if (!c.objective.empty()) {
    j = describe_objective(lookup(c.objective));
  } else {
    j = json::array();
    for (const auto& n : registry()) j.push_back(describe_objective(n));
  }
  emit(c, j.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------

void add_fn(CLI::App* sub, Flags& f) { sub->add_option("--fn", f.fn, "objective registry name"); }

void add_run_flags(CLI::App* sub, Flags& f) {
  add_fn(sub, f);
  sub->add_option("--algo", f.algo, "budget | eps_stop | stochastic_eps");
  sub->add_option("--l1", f.l1, "Lipschitz constant used by the envelope");
  sub->add_option("--alpha", f.alpha, "perturbation bound (deterministic variants)");
  sub->add_option("--budget", f.budget, "number of iterations (budget variant)");
  sub->add_option("--eps", f.eps, "target accuracy (stopping variants)");
  sub->add_option("--sigma1", f.sigma1, "declared noise level (stochastic variant)");
  sub->add_option("--delta", f.delta, "failure probability (stochastic variant)");
  sub->add_option("--x1", f.x1, "initial point")->expected(1, -1);
  sub->add_option("--grid", f.grid, "maximiser grid points per axis (d >= 2)")->expected(1, -1);
  sub->add_option("--iteration-cap", f.iteration_cap, "safety limit on iterations");
  sub->add_option("--perturbation", f.perturbation, "none | adversary | noise");
  sub->add_option("--strategy", f.strategy,
                  "constant_plus | constant_minus | alternating | anti_leader | seeded_uniform");
  sub->add_option("--perturbation-alpha", f.perturbation_alpha, "adversary bound (defaults to --alpha)");
  sub->add_option("--sigma0", f.sigma0, "noise level (defaults to --sigma1)");
  sub->add_option("--noise", f.noise, "gaussian | bounded_uniform");
}

int dispatch(int argc, char** argv) {
  CLI::App app{"Piyavskii-Shubert optimization runs, bounds and audits"};
  app.require_subcommand(1);
  Flags f;
  app.add_option("--config", f.config, "JSON experiment config; flags override it");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--out", f.out, "output path");
  app.add_option("--threads", f.threads, "worker threads for sweeps");

  auto* run_cmd = app.add_subcommand("run", "one run, written as CSV trace + JSON header");
  add_run_flags(run_cmd, f);

  auto* sweep_cmd = app.add_subcommand("sweep", "grid of runs with regression summaries");
  add_run_flags(sweep_cmd, f);
  sweep_cmd->add_option("--eps-list", f.eps_list, "accuracies for stopping variants")->expected(1, -1);
  sweep_cmd->add_option("--budget-list", f.budget_list, "budgets for the budget variant")->expected(1, -1);
  sweep_cmd->add_option("--seeds", f.seeds, "seeds")->expected(1, -1);
  sweep_cmd->add_option("--repetitions", f.repetitions, "runs per (parameter, seed)");

  auto* bounds_cmd = app.add_subcommand("bounds", "sample-complexity bounds as JSON");
  add_fn(bounds_cmd, f);
  bounds_cmd->add_option("--eps", f.eps, "target accuracy");
  bounds_cmd->add_option("--alpha", f.alpha, "perturbation bound");
  bounds_cmd->add_option("--l1", f.l1, "Lipschitz constant used by the algorithm");
  bounds_cmd->add_option("--l0", f.l0, "Lipschitz constant around the maximum");
  bounds_cmd->add_option("--cstar", f.cstar, "packing constant C*");
  bounds_cmd->add_option("--dstar", f.dstar, "near-optimality dimension d*");
  bounds_cmd->add_option("--sigma1", f.sigma1, "noise level for the stochastic bounds");
  bounds_cmd->add_option("--delta", f.delta, "failure probability for the stochastic bounds");
  bounds_cmd->add_option("--grid-points", f.grid_points, "grid points per axis when packings are gridded");

  auto* packing_cmd = app.add_subcommand("packing", "packing numbers of grid-restricted sets as CSV");
  add_fn(packing_cmd, f);
  packing_cmd->add_option("--grid-points", f.grid_points, "grid points per axis");
  packing_cmd->add_option("--level", f.level, "pack the near-optimal set X_level");
  packing_cmd->add_option("--layer", f.layer, "pack the layer X_(a,b]")->expected(2);
  packing_cmd->add_option("--radii", f.radii, "packing radii")->expected(1, -1);

  auto* fit_cmd = app.add_subcommand("fit", "near-optimality dimension fit as JSON");
  add_fn(fit_cmd, f);
  fit_cmd->add_option("--l0", f.l0, "Lipschitz constant around the maximum");
  fit_cmd->add_option("--grid-points", f.grid_points, "grid points per axis");
  fit_cmd->add_option("--scales", f.scales, "number of dyadic scales");
  fit_cmd->add_option("--first-scale", f.first_scale, "index s of the first scale eps0 2^-s");
  fit_cmd->add_flag("--piecewise", f.piecewise, "also fit two segments");

  auto* report_cmd = app.add_subcommand("report", "regret curves and invariant audits of trace files");
  report_cmd->add_option("inputs", f.inputs, "trace CSV files");

  auto* describe_cmd = app.add_subcommand("describe", "registry metadata as JSON");
  add_fn(describe_cmd, f);

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    throw CliError{kExitValidation, "validation", e.what()};
  }

  auto* chosen = app.get_subcommands().front();
  const Command command = command_from_string(chosen->get_name());
  const ExperimentConfig config = load_config(f, command);
  switch (command) {
    case Command::run: return cmd_run(config);
    case Command::sweep: return cmd_sweep(config);
    case Command::bounds: return cmd_bounds(config);
    case Command::packing: return cmd_packing(config);
    case Command::fit: return cmd_fit(config);
    case Command::report: return cmd_report(config);
    case Command::describe: return cmd_describe(config);
  }
  return kExitInternal;
}

void print_error(const CliError& e) {
  std::cerr << json{{"error", {{"code", e.code}, {"kind", e.kind}, {"message", e.message}}}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const CliError& e) {
    print_error(e);
    return e.code;
  } catch (const std::invalid_argument& e) {
    print_error({kExitValidation, "validation", e.what()});
    return kExitValidation;
  } catch (const json::exception& e) {
    print_error({kExitValidation, "validation", e.what()});
    return kExitValidation;
  } catch (const std::exception& e) {
    print_error({kExitInternal, "internal", e.what()});
    return kExitInternal;
  }
}
