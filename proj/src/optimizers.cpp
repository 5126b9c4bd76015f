#include "piyavskii/optimizers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <variant>

namespace piyavskii {

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::budget: return "budget";
    case Algorithm::eps_stop: return "eps_stop";
    case Algorithm::stochastic_eps: return "stochastic_eps";
  }
  return "budget";
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::budget_exhausted: return "budget_exhausted";
    case StopReason::stopping_rule: return "stopping_rule";
    case StopReason::iteration_cap: return "iteration_cap";
  }
  return "budget_exhausted";
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "budget") return Algorithm::budget;
  if (name == "eps_stop") return Algorithm::eps_stop;
  if (name == "stochastic_eps") return Algorithm::stochastic_eps;
  throw ValidationError("unknown algorithm: " + name);
}

StopReason stop_reason_from_string(const std::string& name) {
  if (name == "budget_exhausted") return StopReason::budget_exhausted;
  if (name == "stopping_rule") return StopReason::stopping_rule;
  if (name == "iteration_cap") return StopReason::iteration_cap;
  throw ValidationError("unknown stop reason: " + name);
}

void RunConfig::validate(const BoxDomain& domain) const {
  if (!(L1 > 0.0) || !std::isfinite(L1)) throw ValidationError("L1 must be a positive finite number");
  if (iteration_cap == 0) throw ValidationError("iteration cap must be >= 1");
  const bool is_budget = algorithm == Algorithm::budget;
  const bool is_stoch = algorithm == Algorithm::stochastic_eps;
  if (is_budget != budget.has_value()) {
    throw ValidationError(is_budget ? "budget runs need a budget n" : "budget n only applies to budget runs");
  }
  if (budget && *budget == 0) throw ValidationError("budget n must be >= 1");
  if (is_budget == eps.has_value()) {
    throw ValidationError(is_budget ? "eps does not apply to budget runs" : "stopping runs need eps");
  }
  if (eps && (!(*eps > 0.0) || !std::isfinite(*eps))) throw ValidationError("eps must be > 0");
  if (is_stoch) {
    if (alpha) throw ValidationError("stochastic runs derive alpha = eps/15; do not set alpha");
    if (!sigma1 || !(*sigma1 > 0.0)) throw ValidationError("stochastic runs need sigma1 > 0");
    if (!delta || !(*delta > 0.0 && *delta < 1.0)) throw ValidationError("stochastic runs need delta in (0,1)");
  } else {
    if (sigma1 || delta) throw ValidationError("sigma1/delta only apply to stochastic runs");
    if (alpha && (!(*alpha >= 0.0) || !std::isfinite(*alpha))) throw ValidationError("alpha must be >= 0");
  }
  if (x1) {
    if (x1->size() != domain.dimension()) throw ValidationError("x1 dimension mismatch");
    if (!domain.contains(*x1)) throw ValidationError("x1 lies outside the domain");
  }
  if (grid && grid->size() != domain.dimension()) throw ValidationError("grid dimension mismatch");
}

double RunConfig::effective_eps() const {
  if (!eps) return 0.0;
  return algorithm == Algorithm::stochastic_eps ? (13.0 / 15.0) * *eps : *eps;
}

double RunConfig::effective_alpha() const {
  if (algorithm == Algorithm::stochastic_eps) return eps ? *eps / 15.0 : 0.0;
  return alpha.value_or(0.0);
}

RunConfig make_budget_config(double L1, std::size_t n, double alpha) {
  RunConfig c;
  c.algorithm = Algorithm::budget;
  c.L1 = L1;
  c.budget = n;
  c.alpha = alpha;
  return c;
}

RunConfig make_eps_config(double L1, double eps, double alpha) {
  RunConfig c;
  c.algorithm = Algorithm::eps_stop;
  c.L1 = L1;
  c.eps = eps;
  c.alpha = alpha;
  return c;
}

RunConfig make_stochastic_config(double L1, double eps, double sigma1, double delta) {
  RunConfig c;
  c.algorithm = Algorithm::stochastic_eps;
  c.L1 = L1;
  c.eps = eps;
  c.sigma1 = sigma1;
  c.delta = delta;
  return c;
}

namespace {

constexpr std::size_t kMaxGridPoints = 4'000'000;

// Selection of x_{k+1}: exact in 1-D, grid-certified otherwise.
class Selector {
 public:
  Selector(const Objective& objective, const RunConfig& config, double alpha)
      : domain_(objective.domain), envelope_(config.L1, alpha, objective.norm) {
    if (domain_.dimension() == 1) return;
    std::vector<std::size_t> counts;
    if (config.grid) {
      counts = *config.grid;
    } else if (alpha > 0.0) {
      const double diam = diameter(domain_, objective.norm);
      const double n = std::ceil(config.L1 * diam / (2.0 * alpha)) + 1.0;
      counts.assign(domain_.dimension(), static_cast<std::size_t>(std::max(2.0, n)));
    } else {
      counts.assign(domain_.dimension(), kDefaultGridPointsPerAxis);
    }
    GridSpec grid(domain_, counts);
    if (grid.size() > kMaxGridPoints) {
      throw ValidationError("maximiser grid too large; raise alpha or pass an explicit grid");
    }
    grid_ = std::make_unique<IncrementalGridMaximizer>(grid, objective.norm, config.L1, alpha);
    if (alpha > 0.0 && grid_->gap() > alpha * (1.0 + 1e-12)) {
      throw ValidationError("maximiser certificate gap L1*rho exceeds alpha: grid too coarse");
    }
  }

  EnvelopeMaximum add_and_select(const Sample& s) {
    if (grid_) {
      grid_->add(s);
      return grid_->best();
    }
    envelope_.add(s);
    return argmax_1d(envelope_, domain_);
  }

  double gap() const { return grid_ ? grid_->gap() : 0.0; }

 private:
  BoxDomain domain_;
  UpperEnvelope envelope_;
  std::unique_ptr<IncrementalGridMaximizer> grid_;
};

enum class Mode { budget, eps, stochastic };

RunTrace run_loop(const Objective& objective, const PerturbationModel& model, const RunConfig& config,
                  Mode mode) {
  config.validate(objective.domain);
  RunTrace trace;
  trace.config = config;
  trace.perturbation = describe(model);
  trace.eps = config.effective_eps();
  trace.alpha = config.effective_alpha();

  if (mode == Mode::stochastic) {
    const auto* noise = std::get_if<SubgaussianNoise>(&model);
    if (!noise) throw ValidationError("stochastic runs need a subgaussian noise model");
    if (noise->sigma0 > *config.sigma1) throw ValidationError("noise sigma0 exceeds the declared sigma1");
  } else {
    if (!is_deterministic(model)) throw ValidationError("deterministic runs need a bounded perturbation model");
    if (const auto* adv = std::get_if<BoundedAdversary>(&model); adv && adv->alpha > trace.alpha) {
      throw ValidationError("adversary bound exceeds the run's alpha");
    }
  }

  Selector selector(objective, config, trace.alpha);
  trace.selection_gap = selector.gap();
  const RngStream rng(config.seed);

  std::vector<Point> queries;
  std::vector<double> observations;
  Point x = config.x1 ? *config.x1 : objective.domain.lower();
  double f_star = -std::numeric_limits<double>::infinity();
  std::size_t evals = 0;
  const std::size_t limit = mode == Mode::budget ? *config.budget : config.iteration_cap;

  for (std::size_t k = 1;; ++k) {
    const double f_value = objective(x);
    queries.push_back(x);
    double y = 0.0;
    std::size_t m = 1;
    if (mode == Mode::stochastic) {
      m = minibatch_size(k, *config.sigma1, trace.alpha, *config.delta);
      y = batch_average(std::get<SubgaussianNoise>(model), rng, k, m, f_value).y;
    } else {
      y = f_value + perturb(model, rng, k, 1, f_value, HistoryView{queries, observations});
    }
    evals += m;
    observations.push_back(y);
    f_star = std::max(f_star, y);

    const EnvelopeMaximum next = selector.add_and_select(Sample{k, x, y, m});
    trace.records.push_back(IterationRecord{k, x, y, m, next.value, f_star, evals, f_value});

    if (mode != Mode::budget && next.value - f_star <= trace.eps) {
      trace.stop = StopReason::stopping_rule;
      break;
    }
    if (k == limit) {
      trace.stop = mode == Mode::budget ? StopReason::budget_exhausted : StopReason::iteration_cap;
      break;
    }
    x = next.x;
  }

  trace.best_index = incumbent_index(trace.records, trace.records.size());
  trace.returned_point = trace.records[trace.best_index - 1].x;
  return trace;
}

}  // namespace

RunTrace run_budget(const Objective& objective, const PerturbationModel& model, const RunConfig& config) {
  if (config.algorithm != Algorithm::budget) throw ValidationError("run_budget needs algorithm = budget");
  return run_loop(objective, model, config, Mode::budget);
}

RunTrace run_eps(const Objective& objective, const PerturbationModel& model, const RunConfig& config) {
  if (config.algorithm != Algorithm::eps_stop) throw ValidationError("run_eps needs algorithm = eps_stop");
  return run_loop(objective, model, config, Mode::eps);
}

RunTrace run_stochastic_eps(const Objective& objective, const PerturbationModel& model,
                            const RunConfig& config) {
  if (config.algorithm != Algorithm::stochastic_eps) {
    throw ValidationError("run_stochastic_eps needs algorithm = stochastic_eps");
  }
  return run_loop(objective, model, config, Mode::stochastic);
}

RunTrace run(const Objective& objective, const PerturbationModel& model, const RunConfig& config) {
  switch (config.algorithm) {
    case Algorithm::budget: return run_budget(objective, model, config);
    case Algorithm::eps_stop: return run_eps(objective, model, config);
    case Algorithm::stochastic_eps: return run_stochastic_eps(objective, model, config);
  }
  throw ValidationError("unknown algorithm");
}

std::size_t incumbent_index(const std::vector<IterationRecord>& records, std::size_t k) {
  if (k == 0 || k > records.size()) throw ValidationError("incumbent_index: k out of range");
  std::size_t best = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (records[i].y > records[best].y) best = i;
  }
  return best + 1;
}

namespace {

double known_max(const Objective& objective) {
  if (objective.max_value) return *objective.max_value;
  if (objective.maximizer) return objective(*objective.maximizer);
  throw ValidationError("objective does not declare its maximum");
}

}  // namespace

RegretReport simple_regret(const RunTrace& trace, const Objective& objective) {
  if (trace.records.empty()) throw ValidationError("empty trace");
  const double fmax = known_max(objective);
  RegretReport out;
  std::size_t best = 0;
  for (std::size_t k = 0; k < trace.records.size(); ++k) {
    if (trace.records[k].y > trace.records[best].y) best = k;
    out.curve.push_back(fmax - trace.records[best].f_value);
  }
  out.regret = fmax - objective(trace.returned_point);
  switch (trace.config.algorithm) {
    case Algorithm::budget: break;
    case Algorithm::eps_stop: out.guarantee = trace.eps + 2.0 * trace.alpha; break;
    case Algorithm::stochastic_eps: out.guarantee = *trace.config.eps; break;
  }
  if (out.guarantee && trace.selection_gap > trace.alpha) *out.guarantee += trace.selection_gap;
  return out;
}

AuditResult audit_upper_bound(const RunTrace& trace, const Objective& objective) {
  AuditResult res{"upper_bound", true, std::numeric_limits<double>::infinity(), 0};
  if (!objective.maximizer) throw ValidationError("upper-bound audit needs a declared maximiser");
  const double fmax = known_max(objective);
  const Point& xstar = *objective.maximizer;
  const auto& rec = trace.records;
  const double L1 = trace.config.L1;
  const double alpha = trace.alpha;
  const NormSpec& norm = objective.norm;

  double at_max = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < rec.size(); ++k) {
    at_max = std::min(at_max, rec[k].y + L1 * norm.distance(rec[k].x, xstar) + alpha);
    res.worst_margin = std::min(res.worst_margin, at_max - fmax);
    ++res.checks;
  }
  for (std::size_t k = 0; k < rec.size(); ++k) {
    double env = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < rec.size(); ++j) {
      env = std::min(env, rec[j].y + L1 * norm.distance(rec[j].x, rec[k].x) + alpha);
      if (j >= k) {
        res.worst_margin = std::min(res.worst_margin, rec[k].f_value + 2.0 * alpha - env);
        ++res.checks;
      }
    }
  }
  res.passed = res.worst_margin >= -kAuditTolerance;
  return res;
}

AuditResult audit_suboptimal_separation(const RunTrace& trace, const Objective& objective) {
  AuditResult res{"suboptimal_separation", true, std::numeric_limits<double>::infinity(), 0};
  const double fmax = known_max(objective);
  const auto& rec = trace.records;
  const double L1 = trace.config.L1;
  const double eta = std::max(trace.alpha, trace.selection_gap);
  for (std::size_t i = 0; i < rec.size(); ++i) {
    const double gap = fmax - rec[i].f_value;
    if (!(gap > 0.0)) continue;
    const double radius = (gap - 2.0 * trace.alpha - eta) / L1;
    for (std::size_t j = i + 1; j < rec.size(); ++j) {
      const double dist = objective.norm.distance(rec[i].x, rec[j].x);
      res.worst_margin = std::min(res.worst_margin, dist - radius);
      ++res.checks;
    }
  }
  if (res.checks == 0) res.worst_margin = 0.0;
  res.passed = res.worst_margin >= -kAuditTolerance;
  return res;
}

AuditResult audit_pairwise_separation(const RunTrace& trace, const NormSpec& norm) {
  AuditResult res{"pairwise_separation", true, std::numeric_limits<double>::infinity(), 0};
  const auto& rec = trace.records;
  const double radius = (trace.eps - 3.0 * trace.alpha) / trace.config.L1;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    for (std::size_t j = i + 1; j < rec.size(); ++j) {
      res.worst_margin = std::min(res.worst_margin, norm.distance(rec[i].x, rec[j].x) - radius);
      ++res.checks;
    }
  }
  if (res.checks == 0) res.worst_margin = 0.0;
  res.passed = res.worst_margin >= -kAuditTolerance;
  return res;
}

AuditResult audit_observation_bound(const RunTrace& trace) {
  AuditResult res{"observation_bound", true, std::numeric_limits<double>::infinity(), 0};
  for (const auto& r : trace.records) {
    res.worst_margin = std::min(res.worst_margin, trace.alpha - std::abs(r.y - r.f_value));
    ++res.checks;
  }
  if (res.checks == 0) res.worst_margin = 0.0;
  res.passed = res.worst_margin >= -kAuditTolerance;
  return res;
}

AuditResult audit_bookkeeping(const RunTrace& trace) {
  AuditResult res{"bookkeeping", true, 0.0, 0};
  const auto& rec = trace.records;
  auto fail = [&](double margin) {
    res.passed = false;
    res.worst_margin = std::min(res.worst_margin, margin);
  };
  std::size_t evals = 0;
  for (std::size_t k = 0; k < rec.size(); ++k) {
    ++res.checks;
    evals += rec[k].m;
    if (rec[k].k != k + 1 || rec[k].evals_cum != evals) fail(-1.0);
    if (k > 0 && rec[k].f_star < rec[k - 1].f_star) fail(rec[k].f_star - rec[k - 1].f_star);
    if (trace.config.algorithm == Algorithm::budget) continue;
    const double excess = rec[k].fhat_star - rec[k].f_star - trace.eps;
    const bool last = k + 1 == rec.size();
    if (!last && excess <= 0.0) fail(excess);
    if (last && trace.stop == StopReason::stopping_rule && excess > 0.0) fail(-excess);
  }
  if (!rec.empty() && incumbent_index(rec, rec.size()) != trace.best_index) fail(-1.0);
  if (trace.config.algorithm == Algorithm::budget && trace.config.budget &&
      rec.size() != *trace.config.budget) {
    fail(-1.0);
  }
  return res;
}

std::vector<AuditResult> audit_all(const RunTrace& trace, const Objective& objective) {
  std::vector<AuditResult> out;
  out.push_back(audit_bookkeeping(trace));
  const bool deterministic = trace.config.algorithm != Algorithm::stochastic_eps;
  if (deterministic) out.push_back(audit_observation_bound(trace));
  if (objective.maximizer) {
    out.push_back(audit_upper_bound(trace, objective));
    out.push_back(audit_suboptimal_separation(trace, objective));
  }
  if (trace.config.algorithm != Algorithm::budget) out.push_back(audit_pairwise_separation(trace, objective.norm));
  return out;
}

}  // namespace piyavskii
