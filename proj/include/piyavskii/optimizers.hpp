// optimizers.hpp
//
// Sequential Piyavskii–Shubert loops: fixed budget, epsilon-stopping, and the
// stochastic epsilon-stopping variant with mini-batches. Every run returns a
// full trace that the audit functions below can re-check offline.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "piyavskii/domain.hpp"
#include "piyavskii/envelope.hpp"
#include "piyavskii/perturbation.hpp"

namespace piyavskii {

enum class Algorithm { budget, eps_stop, stochastic_eps };
enum class StopReason { budget_exhausted, stopping_rule, iteration_cap };

std::string to_string(Algorithm a);
std::string to_string(StopReason r);
Algorithm algorithm_from_string(const std::string& name);
StopReason stop_reason_from_string(const std::string& name);

inline constexpr std::size_t kDefaultIterationCap = 1'000'000;
inline constexpr std::size_t kDefaultGridPointsPerAxis = 101;

struct RunConfig {
  Algorithm algorithm = Algorithm::budget;
  double L1 = 1.0;
  std::optional<std::size_t> budget;          // budget
  std::optional<double> eps;                  // eps_stop, stochastic_eps
  std::optional<double> alpha;                // budget, eps_stop (defaults to 0)
  std::optional<double> sigma1;               // stochastic_eps
  std::optional<double> delta;                // stochastic_eps
  std::optional<Point> x1;                    // defaults to the lower corner
  std::optional<std::vector<std::size_t>> grid;  // d >= 2 maximiser grid
  std::size_t iteration_cap = kDefaultIterationCap;
  std::uint64_t seed = 0;

  /// Throws ValidationError unless exactly the fields of `algorithm` are set.
  void validate(const BoxDomain& domain) const;

  /// Accuracy and envelope offset actually used by the loop; the stochastic
  /// variant runs with eps' = (13/15) eps and alpha = eps / 15.
  double effective_eps() const;
  double effective_alpha() const;
};

RunConfig make_budget_config(double L1, std::size_t n, double alpha = 0.0);
RunConfig make_eps_config(double L1, double eps, double alpha = 0.0);
RunConfig make_stochastic_config(double L1, double eps, double sigma1, double delta);

struct IterationRecord {
  std::size_t k = 0;
  Point x;
  double y = 0.0;
  std::size_t m = 1;
  double fhat_star = 0.0;  // fhat_k(x_{k+1})
  double f_star = 0.0;     // max_{i<=k} y_i
  std::size_t evals_cum = 0;
  double f_value = 0.0;    // f(x_k), kept for audits; not part of the CSV
};

struct RunTrace {
  RunConfig config;
  std::string objective_name;
  std::string perturbation;
  double eps = 0.0;       // effective accuracy (0 for budget runs)
  double alpha = 0.0;     // effective envelope offset
  double selection_gap = 0.0;  // certificate slack of the maximiser (0 in 1-D)
  std::vector<IterationRecord> records;
  StopReason stop = StopReason::budget_exhausted;
  std::size_t best_index = 0;  // 1-based i*_n
  Point returned_point;

  std::size_t iterations() const { return records.size(); }
  std::size_t evaluations() const { return records.empty() ? 0 : records.back().evals_cum; }
};

RunTrace run_budget(const Objective& objective, const PerturbationModel& model, const RunConfig& config);
RunTrace run_eps(const Objective& objective, const PerturbationModel& model, const RunConfig& config);
RunTrace run_stochastic_eps(const Objective& objective, const PerturbationModel& model,
                            const RunConfig& config);
/// Dispatches on config.algorithm.
RunTrace run(const Objective& objective, const PerturbationModel& model, const RunConfig& config);

/// Index (1-based) of the first maximal observation among the first k records.
std::size_t incumbent_index(const std::vector<IterationRecord>& records, std::size_t k);

struct RegretReport {
  double regret = 0.0;
  std::vector<double> curve;  // f(x*) - f(x_{i*_k}) for k = 1..n
  std::optional<double> guarantee;
};

RegretReport simple_regret(const RunTrace& trace, const Objective& objective);

struct AuditResult {
  std::string name;
  bool passed = true;
  double worst_margin = 0.0;  // >= -tolerance when passed
  std::size_t checks = 0;
};

inline constexpr double kAuditTolerance = 1e-9;

/// fhat_k(x*) >= f(x*) and fhat_j(x_k) <= f(x_k) + 2 alpha for all k <= j.
AuditResult audit_upper_bound(const RunTrace& trace, const Objective& objective);
/// A query with gap Delta keeps every later query farther than
/// (Delta - 2 alpha - eta) / L1, eta being the selection slack (alpha, or the
/// grid certificate when that is larger).
AuditResult audit_suboptimal_separation(const RunTrace& trace, const Objective& objective);
/// For stopping runs: all pairs farther than (eps - 3 alpha) / L1.
AuditResult audit_pairwise_separation(const RunTrace& trace, const NormSpec& norm);
/// |y_k - f(x_k)| <= alpha (deterministic runs only).
AuditResult audit_observation_bound(const RunTrace& trace);
/// f*_k nondecreasing, and the stopping rule consistent with the stop reason.
AuditResult audit_bookkeeping(const RunTrace& trace);

std::vector<AuditResult> audit_all(const RunTrace& trace, const Objective& objective);

}  // namespace piyavskii
