#include "piyavskii/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

namespace piyavskii {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct CellHash {
  std::size_t operator()(const std::vector<long long>& key) const {
    std::size_t h = 1469598103934665603ULL;
    for (long long v : key) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

std::vector<std::size_t> lexicographic_order(std::span<const Point> points) {
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(points[a].begin(), points[a].end(), points[b].begin(),
                                        points[b].end());
  });
  return order;
}

// Greedy scan: keep a point unless some kept point lies within distance <= r.
// The kept set is both a maximal r-packing and an r-cover of the input.
std::size_t greedy_scan(std::span<const Point> points, double r, const NormSpec& norm) {
  if (points.empty()) return 0;
  const std::size_t d = points.front().size();
  // Every supported norm dominates max_i w_i |v_i|, so a kept point within r
  // sits in one of the 3^d neighbouring cells of side r / w_i.
  std::vector<double> cell(d);
  for (std::size_t i = 0; i < d; ++i) cell[i] = r / norm.weight(i);

  std::unordered_map<std::vector<long long>, std::vector<std::size_t>, CellHash> buckets;
  std::vector<std::size_t> kept;
  std::vector<long long> key(d), probe(d);

  for (std::size_t idx : lexicographic_order(points)) {
    const Point& p = points[idx];
    for (std::size_t i = 0; i < d; ++i) key[i] = static_cast<long long>(std::floor(p[i] / cell[i]));

    bool covered = false;
    std::size_t combos = 1;
    for (std::size_t i = 0; i < d; ++i) combos *= 3;
    for (std::size_t c = 0; c < combos && !covered; ++c) {
      std::size_t rest = c;
      for (std::size_t i = 0; i < d; ++i) {
        probe[i] = key[i] + static_cast<long long>(rest % 3) - 1;
        rest /= 3;
      }
      auto it = buckets.find(probe);
      if (it == buckets.end()) continue;
      for (std::size_t j : it->second) {
        if (norm.distance(points[j], p) <= r) {
          covered = true;
          break;
        }
      }
    }
    if (!covered) {
      buckets[key].push_back(idx);
      kept.push_back(idx);
    }
  }
  return kept.size();
}

std::size_t sweep_1d(std::span<const Point> points, double r, const NormSpec& norm) {
  std::vector<double> xs;
  xs.reserve(points.size());
  for (const auto& p : points) xs.push_back(p[0]);
  std::sort(xs.begin(), xs.end());
  std::size_t count = 0;
  double last = 0.0;
  for (double x : xs) {
    const double a[1] = {x};
    const double b[1] = {last};
    if (count == 0 || norm.distance(a, b) > r) {
      last = x;
      ++count;
    }
  }
  return count;
}

void require_positive_radius(double r) {
  if (!(r > 0.0)) throw ValidationError("packing radius must be > 0");
}

double declared_max(const Objective& objective) {
  if (!objective.max_value) throw ValidationError("objective does not declare f(x*)");
  return *objective.max_value;
}

const GapProfile& require_profile_1d(const Objective& objective) {
  if (objective.dimension() != 1) throw ValidationError("exact interval packings need d = 1");
  if (!objective.gap_profile) throw ValidationError("objective has no gap profile");
  if (!objective.maximizer) throw ValidationError("objective does not declare x*");
  return objective.gap_profile;
}

void clip_into(std::vector<Interval>& out, Interval iv, const BoxDomain& domain) {
  const double lo = domain.lower()[0];
  const double hi = domain.upper()[0];
  if (iv.lo < lo) {
    iv.lo = lo;
    iv.lo_open = false;
  }
  if (iv.hi > hi) {
    iv.hi = hi;
    iv.hi_open = false;
  }
  if (!iv.empty()) out.push_back(iv);
}

void check_tilde_inputs(const Objective& objective, double eps, double alpha, double L1, double L0,
                        double alpha_factor) {
  if (!(L0 > 0.0) || !(L1 >= L0)) throw ValidationError("need 0 < L0 <= L1");
  const double eps0 = epsilon0(L0, objective.domain, objective.norm);
  if (!(eps > 0.0) || !(eps < eps0)) throw ValidationError("eps must lie in (0, eps0)");
  if (!(alpha >= 0.0) || !(alpha < eps / alpha_factor)) {
    throw ValidationError("alpha must lie in [0, eps/" + std::to_string(static_cast<int>(alpha_factor)) + ")");
  }
}

PackingResult grid_packing(const PointSet& set, double r, const NormSpec& norm) {
  return packing_number(set.points, r, norm);
}

void accumulate(CountInterval& total, const PackingResult& p) {
  total.lower += p.exact ? *p.exact : p.lower;
  total.upper += p.exact ? *p.exact : p.upper;
}

double layer_radius(double eps0, std::size_t s, double alpha, double L1) {
  return (eps0 * std::ldexp(1.0, -static_cast<int>(s) - 1) - 3.0 * alpha) / L1;
}

double layer_top(double eps0, std::size_t s) { return eps0 * std::ldexp(1.0, -static_cast<int>(s)); }

}  // namespace

PackingResult packing_number(std::span<const Point> points, double r, const NormSpec& norm) {
  require_positive_radius(r);
  PackingResult out;
  if (points.empty()) {
    out.exact = 0;
    return out;
  }
  if (points.front().size() == 1) {
    const std::size_t n = sweep_1d(points, r, norm);
    out.lower = out.upper = n;
    out.exact = n;
    return out;
  }
  out.lower = greedy_scan(points, r, norm);
  out.upper = std::max(out.lower, greedy_scan(points, r / 2.0, norm));
  if (out.lower == out.upper) out.exact = out.lower;
  return out;
}

std::size_t greedy_packing(std::span<const Point> points, double r, const NormSpec& norm) {
  require_positive_radius(r);
  return greedy_scan(points, r, norm);
}

std::size_t covering_number_greedy(std::span<const Point> points, double r, const NormSpec& norm) {
  require_positive_radius(r);
  return greedy_scan(points, r, norm);
}

std::size_t interval_packing_number(std::vector<Interval> intervals, double r) {
  require_positive_radius(r);
  std::erase_if(intervals, [](const Interval& iv) { return iv.empty(); });
  std::sort(intervals.begin(), intervals.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.lo_open && b.lo_open;
  });
  // Leftmost greedy: the next point must be >= pos, or > pos when `strict`.
  double pos = -kInf;
  bool strict = false;
  std::size_t count = 0;
  for (const auto& iv : intervals) {
    double cand = iv.lo;
    bool cand_strict = iv.lo_open;
    if (pos > cand) {
      cand = pos;
      cand_strict = strict;
    } else if (pos == cand) {
      cand_strict = cand_strict || strict;
    }
    if (cand > iv.hi) continue;
    if (cand == iv.hi && (cand_strict || iv.hi_open)) continue;
    const double L = iv.hi - cand;
    const std::size_t n = L > 0.0 ? static_cast<std::size_t>(std::ceil(L / r)) : 1;
    count += n;
    pos = cand + static_cast<double>(n) * r;
    strict = true;
  }
  return count;
}

std::vector<Interval> near_optimal_intervals(const Objective& objective, double t) {
  const GapProfile& radius = require_profile_1d(objective);
  if (!(t >= 0.0)) throw ValidationError("near-optimality level must be >= 0");
  const double c = (*objective.maximizer)[0];
  const double w = objective.norm.weight(0);
  const double R = radius(t) / w;
  std::vector<Interval> out;
  clip_into(out, {c - R, c + R, false, false}, objective.domain);
  return out;
}

std::vector<Interval> layer_intervals(const Objective& objective, double a, double b) {
  const GapProfile& radius = require_profile_1d(objective);
  if (!(a >= 0.0) || !(b > a)) throw ValidationError("layer needs 0 <= a < b");
  const double c = (*objective.maximizer)[0];
  const double w = objective.norm.weight(0);
  const double Ra = radius(a) / w;
  const double Rb = radius(b) / w;
  std::vector<Interval> out;
  if (!(Rb > Ra) || std::isinf(Ra)) return out;
  clip_into(out, {c - Rb, c - Ra, false, true}, objective.domain);
  clip_into(out, {c + Ra, c + Rb, true, false}, objective.domain);
  return out;
}

std::size_t dyadic_depth(double eps0, double eps) {
  if (!(eps > 0.0) || !(eps0 > 0.0)) throw ValidationError("dyadic depth needs positive scales");
  const double ratio = eps0 / eps;
  if (ratio <= 1.0) return 0;
  const double l = std::log2(ratio);
  const double nearest = std::round(l);
  if (std::abs(l - nearest) < 1e-12 * std::max(1.0, nearest)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(l));
}

CountInterval n_tilde(const Objective& objective, const GridSpec& grid, double eps, double alpha, double L1,
                      double L0) {
  check_tilde_inputs(objective, eps, alpha, L1, L0, 6.0);
  const double eps0 = epsilon0(L0, objective.domain, objective.norm);
  const GridValues values = evaluate_grid(objective, grid);
  const std::size_t m = dyadic_depth(eps0, eps);
  CountInterval total{1, 1};
  for (std::size_t s = 0; s < m; ++s) {
    const PointSet layer = layer_set(values, layer_top(eps0, s + 1), layer_top(eps0, s));
    accumulate(total, grid_packing(layer, layer_radius(eps0, s, alpha, L1), objective.norm));
  }
  return total;
}

CountInterval n_tilde_prime(const Objective& objective, const GridSpec& grid, double eps, double alpha,
                            double L1, double L0) {
  check_tilde_inputs(objective, eps, alpha, L1, L0, 12.0);
  const double eps0 = epsilon0(L0, objective.domain, objective.norm);
  const GridValues values = evaluate_grid(objective, grid);
  const std::size_t m = dyadic_depth(eps0, eps);
  CountInterval total;
  accumulate(total, grid_packing(near_optimal_set(values, eps / 2.0), (eps - 3.0 * alpha) / L1, objective.norm));
  for (std::size_t s = 0; s <= m; ++s) {
    const PointSet layer = layer_set(values, layer_top(eps0, s + 1), layer_top(eps0, s));
    accumulate(total, grid_packing(layer, layer_radius(eps0, s, alpha, L1), objective.norm));
  }
  return total;
}

std::size_t n_tilde_exact_1d(const Objective& objective, double eps, double alpha, double L1, double L0) {
  check_tilde_inputs(objective, eps, alpha, L1, L0, 6.0);
  const double eps0 = epsilon0(L0, objective.domain, objective.norm);
  const double w = objective.norm.weight(0);
  const std::size_t m = dyadic_depth(eps0, eps);
  std::size_t total = 1;
  for (std::size_t s = 0; s < m; ++s) {
    total += interval_packing_number(layer_intervals(objective, layer_top(eps0, s + 1), layer_top(eps0, s)),
                                     layer_radius(eps0, s, alpha, L1) / w);
  }
  return total;
}

std::size_t n_tilde_prime_exact_1d(const Objective& objective, double eps, double alpha, double L1,
                                   double L0) {
  check_tilde_inputs(objective, eps, alpha, L1, L0, 12.0);
  const double eps0 = epsilon0(L0, objective.domain, objective.norm);
  const double w = objective.norm.weight(0);
  const std::size_t m = dyadic_depth(eps0, eps);
  std::size_t total = interval_packing_number(near_optimal_intervals(objective, eps / 2.0), (eps - 3.0 * alpha) / L1 / w);
  for (std::size_t s = 0; s <= m; ++s) {
    total += interval_packing_number(layer_intervals(objective, layer_top(eps0, s + 1), layer_top(eps0, s)),
                                     layer_radius(eps0, s, alpha, L1) / w);
  }
  return total;
}

namespace {

void check_cstar_inputs(const CstarInputs& in) {
  if (!(in.cstar >= 0.0)) throw ValidationError("C* must be >= 0");
  if (!(in.dstar >= 0.0) || in.dstar > static_cast<double>(in.dimension)) {
    throw ValidationError("d* must lie in [0, d]");
  }
  if (!(in.L0 > 0.0) || !(in.L1 >= in.L0)) throw ValidationError("need 0 < L0 <= L1");
  if (!(in.eps > 0.0) || !(in.eps0 >= in.eps)) throw ValidationError("eps must lie in (0, eps0]");
  if (in.dimension == 0) throw ValidationError("dimension must be >= 1");
}

double lipschitz_factor(const CstarInputs& in, double constant) {
  const bool inflate = in.L1 != in.L0 || in.alpha != 0.0;
  const double base = 1.0 + (inflate ? constant * in.L1 / in.L0 : 0.0);
  return std::pow(base, static_cast<double>(in.dimension));
}

}  // namespace

double n_bar(const CstarInputs& in) {
  check_cstar_inputs(in);
  if (!(in.alpha >= 0.0) || in.alpha > in.eps / 9.0) throw ValidationError("alpha must lie in [0, eps/9]");
  const double ratio = in.eps0 / in.eps;
  double branch;
  if (in.dstar == 0.0) {
    branch = std::log2(ratio) + std::log2(18.0 / 7.0);
  } else {
    branch = (std::pow(18.0 / 7.0, in.dstar) * std::pow(ratio, in.dstar) - 1.0) / (std::pow(2.0, in.dstar) - 1.0);
  }
  return 1.0 + in.cstar * lipschitz_factor(in, 28.0) * branch;
}

double n_bar_prime(const CstarInputs& in) {
  check_cstar_inputs(in);
  if (!(in.alpha >= 0.0) || in.alpha > in.eps / 15.0) throw ValidationError("alpha must lie in [0, eps/15]");
  const double ratio = in.eps0 / in.eps;
  double branch;
  if (in.dstar == 0.0) {
    branch = std::log2(ratio) + std::log2(120.0 / 13.0);
  } else {
    const double ds = in.dstar;
    branch = ((std::pow(4.0, ds) + std::pow(2.0, ds) - 1.0) * std::pow(15.0 / 13.0, ds) * std::pow(ratio, ds) - 1.0) /
             (std::pow(2.0, ds) - 1.0);
  }
  return in.cstar * lipschitz_factor(in, 52.0) * branch;
}

double stochastic_bound(double n_inner, double sigma1, double eps, double delta) {
  if (!(n_inner >= 1.0)) throw ValidationError("inner iteration bound must be >= 1");
  if (!(sigma1 > 0.0)) throw ValidationError("sigma1 must be > 0");
  if (!(eps > 0.0)) throw ValidationError("eps must be > 0");
  if (!(delta > 0.0)) throw ValidationError("delta must be > 0");
  const double n1 = n_inner + 1.0;
  return 900.0 * (sigma1 * sigma1) / (eps * eps) * n1 * std::log(4.0 * n1 / delta) + n_inner;
}

HansenResult hansen_bound_1d(const Objective& objective, double L0, double L1, double eps, std::size_t panels) {
  if (objective.dimension() != 1) throw ValidationError("Hansen bound needs d = 1");
  if (!(L0 > 0.0) || !(L1 >= L0)) throw ValidationError("need 0 < L0 <= L1");
  if (!(eps > 0.0)) throw ValidationError("eps must be > 0");
  if (panels < 4) throw ValidationError("quadrature needs at least 4 panels");
  if (panels % 4 != 0) panels += 4 - panels % 4;  // halving must stay even
  const double fstar = declared_max(objective);
  const double lo = objective.domain.lower()[0];
  const double hi = objective.domain.upper()[0];

  auto integrand = [&](double x) {
    const double p[1] = {x};
    return 1.0 / (fstar - objective(p) + eps);
  };
  auto simpson = [&](std::size_t n) {
    const double h = (hi - lo) / static_cast<double>(n);
    double acc = integrand(lo) + integrand(hi);
    for (std::size_t i = 1; i < n; ++i) {
      acc += (i % 2 == 1 ? 4.0 : 2.0) * integrand(lo + static_cast<double>(i) * h);
    }
    return acc * h / 3.0;
  };

  HansenResult out;
  out.integral = simpson(panels);
  out.error_estimate = std::abs(out.integral - simpson(panels / 2)) / 15.0;
  const double w = objective.norm.weight(0);
  out.value = 1.0 + 2.0 * L0 * w / std::log1p(L0 / L1) * out.integral;
  return out;
}

double hansen_corollary_bound(double cstar, double dstar, double eps, double eps0, double L0, double L1,
                              double v1) {
  if (!(cstar >= 0.0)) throw ValidationError("C* must be >= 0");
  if (!(dstar >= 0.0) || dstar > 1.0) throw ValidationError("d* must lie in [0, 1]");
  if (!(L0 > 0.0) || !(L1 >= L0)) throw ValidationError("need 0 < L0 <= L1");
  if (!(eps > 0.0) || !(eps0 >= eps)) throw ValidationError("eps must lie in (0, eps0]");
  if (!(v1 > 0.0)) throw ValidationError("unit ball volume must be > 0");
  const double ratio = eps0 / eps;
  double branch;
  if (dstar == 0.0) {
    branch = 2.0 * std::log2(ratio) + 3.0;
  } else {
    branch = (std::pow(2.0, dstar + 1.0) / (std::pow(2.0, dstar) - 1.0) + 1.0) * std::pow(ratio, dstar);
  }
  return 1.0 + v1 * cstar / std::log1p(L0 / L1) * branch;
}

double packing_bound_generic(double eps, double eps0, std::size_t d) {
  if (!(eps > 0.0) || !(eps0 >= eps)) throw ValidationError("eps must lie in (0, eps0]");
  const double dd = static_cast<double>(d);
  return std::pow(9.0, dd) * std::pow(eps0 / eps, dd);
}

double rescale_lemma_multiplier(double r1, double r2, std::size_t d) {
  if (!(r1 > 0.0) || !(r2 > 0.0)) throw ValidationError("radii must be > 0");
  const double base = 1.0 + (r2 > r1 ? 4.0 * r2 / r1 : 0.0);
  return std::pow(base, static_cast<double>(d));
}

double rescale_lemma_bound(double packing_at_r2, double r1, double r2, std::size_t d) {
  return rescale_lemma_multiplier(r1, r2, d) * packing_at_r2;
}

LineFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("line fit needs at least 2 points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw ValidationError("line fit needs distinct abscissae");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

DimensionFit fit_near_optimality(const Objective& objective, const GridSpec& grid, double L0,
                                 std::size_t scale_count, std::size_t first_scale) {
  if (scale_count < 3) throw ValidationError("dimension fit needs at least 3 scales");
  if (!(L0 > 0.0)) throw ValidationError("L0 must be > 0");
  const double eps0 = epsilon0(L0, objective.domain, objective.norm);
  const GridValues values = evaluate_grid(objective, grid);

  DimensionFit fit;
  std::vector<double> xs, ys;
  for (std::size_t s = first_scale; s < first_scale + scale_count; ++s) {
    const double eps = layer_top(eps0, s);
    const PointSet set = near_optimal_set(values, eps);
    const PackingResult p = packing_number(set.points, eps / (2.0 * L0), objective.norm);
    const std::size_t n = p.exact ? *p.exact : p.lower;
    fit.scales.push_back(eps);
    fit.log_ratio.push_back(std::log(eps0 / eps));
    fit.packings.push_back(n);
    if (n > 0) {
      xs.push_back(std::log(eps0 / eps));
      ys.push_back(std::log(static_cast<double>(n)));
    }
  }
  if (xs.size() < 2) throw ValidationError("degenerate dimension fit: fewer than 2 nonzero scales");
  const LineFit line = least_squares(xs, ys);
  fit.dstar = line.slope;
  fit.cstar = std::exp(line.intercept);
  fit.r_squared = line.r_squared;
  return fit;
}

PiecewiseFit fit_piecewise(const DimensionFit& fit, std::size_t min_points) {
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < fit.packings.size(); ++i) {
    if (fit.packings[i] == 0) continue;
    xs.push_back(fit.log_ratio[i]);
    ys.push_back(std::log(static_cast<double>(fit.packings[i])));
  }
  min_points = std::max<std::size_t>(min_points, 2);
  if (xs.size() < 2 * min_points) throw ValidationError("piecewise fit needs 2 * min_points nonzero scales");

  auto sse = [&](std::size_t begin, std::size_t end, const LineFit& line) {
    double acc = 0.0;
    for (std::size_t i = begin; i < end; ++i) {
      const double e = ys[i] - (line.intercept + line.slope * xs[i]);
      acc += e * e;
    }
    return acc;
  };

  PiecewiseFit best;
  double best_sse = kInf;
  for (std::size_t b = min_points; b + min_points <= xs.size(); ++b) {
    const std::span<const double> x(xs), y(ys);
    const LineFit coarse = least_squares(x.subspan(0, b), y.subspan(0, b));
    const LineFit fine = least_squares(x.subspan(b), y.subspan(b));
    const double total = sse(0, b, coarse) + sse(b, xs.size(), fine);
    if (total < best_sse - 1e-12) {
      best_sse = total;
      best = {b, coarse, fine};
    }
  }
  return best;
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

BoundReport compute_bounds(const Objective& objective, const BoundRequest& request) {
  BoundReport report;
  report.inputs = request;
  if (!request.L0) {
    if (!objective.L0) throw ValidationError("L0 is neither given nor declared by the objective");
    report.inputs.L0 = objective.L0;
  }
  if (!report.inputs.cstar) report.inputs.cstar = objective.cstar;
  if (!report.inputs.dstar) report.inputs.dstar = objective.dstar;
  const BoundRequest& in = report.inputs;
  const double L0 = *in.L0;
  if (!(in.eps > 0.0)) throw ValidationError("eps must be > 0");
  if (!(in.alpha >= 0.0)) throw ValidationError("alpha must be >= 0");
  if (!(L0 > 0.0) || !(in.L1 >= L0)) throw ValidationError("need 0 < L0 <= L1");
  if (in.delta && !(*in.delta > 0.0 && *in.delta < 1.0)) throw ValidationError("delta must lie in (0, 1)");
  report.eps0 = epsilon0(L0, objective.domain, objective.norm);
  const std::size_t d = objective.dimension();
  const bool exact_1d = d == 1 && static_cast<bool>(objective.gap_profile) && objective.maximizer.has_value();

  auto skipped = [&](const std::string& name, const std::string& why) {
    report.entries.push_back({name, std::numeric_limits<double>::quiet_NaN(), std::nullopt, "skipped: " + why});
  };
  auto count_entry = [&](const std::string& name, auto exact_fn, auto grid_fn) {
    try {
      if (exact_1d) {
        report.entries.push_back({name, static_cast<double>(exact_fn()), std::nullopt, "exact interval packing"});
      } else {
        const CountInterval c = grid_fn(GridSpec::uniform(objective.domain, in.grid_points));
        report.entries.push_back({name, static_cast<double>(c.lower), static_cast<double>(c.upper),
                                  "grid restriction; may undercount the continuum value"});
      }
    } catch (const ValidationError& e) {
      skipped(name, e.what());
    }
  };

  count_entry(
      "n_tilde", [&] { return n_tilde_exact_1d(objective, in.eps, in.alpha, in.L1, L0); },
      [&](const GridSpec& g) { return n_tilde(objective, g, in.eps, in.alpha, in.L1, L0); });
  count_entry(
      "n_tilde_prime", [&] { return n_tilde_prime_exact_1d(objective, in.eps, in.alpha, in.L1, L0); },
      [&](const GridSpec& g) { return n_tilde_prime(objective, g, in.eps, in.alpha, in.L1, L0); });

  const bool have_cd = in.cstar.has_value() && in.dstar.has_value();
  CstarInputs ci{in.cstar.value_or(0.0), in.dstar.value_or(0.0), in.eps, report.eps0, L0, in.L1, in.alpha, d};
  auto real_entry = [&](const std::string& name, auto fn, const std::string& note) {
    try {
      report.entries.push_back({name, fn(), std::nullopt, note});
    } catch (const ValidationError& e) {
      skipped(name, e.what());
    }
  };
  if (have_cd) {
    real_entry("n_bar", [&] { return n_bar(ci); }, "");
    real_entry("n_bar_prime", [&] { return n_bar_prime(ci); }, "");
  } else {
    skipped("n_bar", "C* and d* unknown");
    skipped("n_bar_prime", "C* and d* unknown");
  }

  const bool stochastic = in.sigma1.has_value() && in.delta.has_value();
  if (stochastic) {
    const double eps_inner = 13.0 * in.eps / 15.0;
    const double alpha_inner = in.eps / 15.0;
    count_entry(
        "N_tilde_prime",
        [&] {
          const auto n = n_tilde_prime_exact_1d(objective, eps_inner, alpha_inner, in.L1, L0);
          return stochastic_bound(static_cast<double>(n), *in.sigma1, in.eps, *in.delta);
        },
        [&](const GridSpec& g) {
          const CountInterval c = n_tilde_prime(objective, g, eps_inner, alpha_inner, in.L1, L0);
          // Rounded so that the interval survives the integer report type.
          return CountInterval{
              static_cast<std::size_t>(std::floor(
                  stochastic_bound(static_cast<double>(c.lower), *in.sigma1, in.eps, *in.delta))),
              static_cast<std::size_t>(
                  std::ceil(stochastic_bound(static_cast<double>(c.upper), *in.sigma1, in.eps, *in.delta)))};
        });
    if (have_cd) {
      CstarInputs cs = ci;
      cs.alpha = alpha_inner;
      real_entry(
          "N_bar_prime", [&] { return stochastic_bound(n_bar_prime(cs), *in.sigma1, in.eps, *in.delta); }, "");
    } else {
      skipped("N_bar_prime", "C* and d* unknown");
    }
  } else {
    skipped("N_tilde_prime", "sigma1 and delta not given");
    skipped("N_bar_prime", "sigma1 and delta not given");
  }

  if (d == 1 && objective.max_value) {
    real_entry("hansen_n_py", [&] { return hansen_bound_1d(objective, L0, in.L1, in.eps).value; },
               "assumes global L0-Lipschitzness and alpha = 0");
    if (have_cd) {
      real_entry(
          "hansen_n_bar_py",
          [&] {
            return hansen_corollary_bound(*in.cstar, *in.dstar, in.eps, report.eps0, L0, in.L1,
                                          objective.norm.unit_ball_length_1d());
          },
          "");
    } else {
      skipped("hansen_n_bar_py", "C* and d* unknown");
    }
  } else {
    skipped("hansen_n_py", "needs d = 1 and a declared f(x*)");
    skipped("hansen_n_bar_py", "needs d = 1");
  }
  return report;
}

}  // namespace piyavskii
