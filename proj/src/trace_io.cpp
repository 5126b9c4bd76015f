#include "piyavskii/trace_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "piyavskii/bench.hpp"

namespace piyavskii {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& text) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ValidationError("not a number: '" + text + "'");
  return v;
}

namespace {

template <typename T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
std::optional<T> get_optional(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known, const char* what) {
  if (!j.is_object()) throw ValidationError(std::string(what) + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ValidationError(std::string("unknown ") + what + " key: " + key);
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::size_t parse_count(const std::string& text) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    throw ValidationError("not a count: '" + text + "'");
  }
  if (used != text.size()) throw ValidationError("not a count: '" + text + "'");
  return static_cast<std::size_t>(v);
}

std::string join_point(const Point& x) {
  std::string out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) out += ';';
    out += format_double(x[i]);
  }
  return out;
}

}  // namespace

json run_config_to_json(const RunConfig& c) {
  json j;
  j["algorithm"] = to_string(c.algorithm);
  j["L1"] = c.L1;
  put_optional(j, "budget", c.budget);
  put_optional(j, "eps", c.eps);
  put_optional(j, "alpha", c.alpha);
  put_optional(j, "sigma1", c.sigma1);
  put_optional(j, "delta", c.delta);
  put_optional(j, "x1", c.x1);
  put_optional(j, "grid", c.grid);
  j["iteration_cap"] = c.iteration_cap;
  j["seed"] = c.seed;
  return j;
}

RunConfig run_config_from_json(const json& j) {
  reject_unknown_keys(j,
                      {"algorithm", "L1", "budget", "eps", "alpha", "sigma1", "delta", "x1", "grid",
                       "iteration_cap", "seed"},
                      "run config");
  try {
    RunConfig c;
    if (j.contains("algorithm")) c.algorithm = algorithm_from_string(j.at("algorithm").get<std::string>());
    if (j.contains("L1")) c.L1 = j.at("L1").get<double>();
    c.budget = get_optional<std::size_t>(j, "budget");
    c.eps = get_optional<double>(j, "eps");
    c.alpha = get_optional<double>(j, "alpha");
    c.sigma1 = get_optional<double>(j, "sigma1");
    c.delta = get_optional<double>(j, "delta");
    c.x1 = get_optional<Point>(j, "x1");
    c.grid = get_optional<std::vector<std::size_t>>(j, "grid");
    if (j.contains("iteration_cap")) c.iteration_cap = j.at("iteration_cap").get<std::size_t>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad run config: ") + e.what());
  }
}

json perturbation_to_json(const PerturbationModel& model) {
  json j;
  if (std::holds_alternative<NoPerturbation>(model)) {
    j["kind"] = "none";
  } else if (const auto* a = std::get_if<BoundedAdversary>(&model)) {
    j["kind"] = "adversary";
    j["alpha"] = a->alpha;
    j["strategy"] = to_string(a->strategy);
  } else {
    const auto& s = std::get<SubgaussianNoise>(model);
    j["kind"] = "noise";
    j["sigma0"] = s.sigma0;
    j["distribution"] = to_string(s.distribution);
  }
  return j;
}

PerturbationModel perturbation_from_json(const json& j) {
  reject_unknown_keys(j, {"kind", "alpha", "strategy", "sigma0", "distribution"}, "perturbation");
  try {
    const std::string kind = j.value("kind", std::string("none"));
    if (kind == "none") return NoPerturbation{};
    if (kind == "adversary") {
      return make_bounded_adversary(j.at("alpha").get<double>(),
                                    adversary_strategy_from_string(j.value("strategy", std::string("constant_plus"))));
    }
    if (kind == "noise") {
      return make_subgaussian(j.at("sigma0").get<double>(),
                              noise_distribution_from_string(j.value("distribution", std::string("gaussian"))));
    }
    throw ValidationError("unknown perturbation kind: " + kind);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad perturbation: ") + e.what());
  }
}

std::string trace_csv(const RunTrace& trace, const Objective& objective) {
  std::vector<double> regret;
  if (objective.max_value && !trace.records.empty()) regret = simple_regret(trace, objective).curve;
  std::string out = kTraceColumns;
  out += '\n';
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const auto& r = trace.records[i];
    out += std::to_string(r.k);
    out += ',' + join_point(r.x);
    out += ',' + format_double(r.y);
    out += ',' + std::to_string(r.m);
    out += ',' + format_double(r.fhat_star);
    out += ',' + format_double(r.f_star);
    out += ',' + std::to_string(r.evals_cum);
    out += ',';
    if (!regret.empty()) out += format_double(regret[i]);
    out += '\n';
  }
  return out;
}

json trace_header(const RunTrace& trace, const PerturbationModel& model, const json& metadata) {
  json j;
  j["format_version"] = kTraceFormatVersion;
  j["columns"] = kTraceColumns;
  j["objective"] = trace.objective_name;
  j["config"] = run_config_to_json(trace.config);
  j["seed"] = trace.config.seed;
  j["perturbation"] = perturbation_to_json(model);
  j["perturbation_description"] = trace.perturbation;
  j["eps"] = trace.eps;
  j["alpha"] = trace.alpha;
  j["selection_gap"] = trace.selection_gap;
  j["stop_reason"] = to_string(trace.stop);
  j["iterations"] = trace.iterations();
  j["evaluations"] = trace.evaluations();
  j["best_index"] = trace.best_index;
  j["returned_point"] = trace.returned_point;
  j["metadata"] = metadata;
  return j;
}

std::filesystem::path header_path(const std::filesystem::path& csv_path) {
  auto p = csv_path;
  p.replace_extension(".json");
  return p;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os << content;
    os.flush();
    if (!os) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

void write_trace(const std::filesystem::path& csv_path, const RunTrace& trace, const Objective& objective,
                 const PerturbationModel& model, const json& metadata) {
  if (header_path(csv_path) == csv_path) throw ValidationError("trace path must not end in .json");
  const std::string csv = trace_csv(trace, objective);
  const std::string header = trace_header(trace, model, metadata).dump(2) + "\n";
  write_file_atomic(csv_path, csv);
  try {
    write_file_atomic(header_path(csv_path), header);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(csv_path, ec);
    throw;
  }
}

LoadedTrace read_trace(const std::filesystem::path& csv_path) {
  std::ifstream hs(header_path(csv_path));
  if (!hs) throw ValidationError("cannot read trace header " + header_path(csv_path).string());
  LoadedTrace out;
  try {
    out.header = json::parse(hs);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad trace header: ") + e.what());
  }
  const json& h = out.header;
  try {
    if (h.at("format_version").get<int>() != kTraceFormatVersion) throw ValidationError("unsupported trace format");
    out.trace.objective_name = h.at("objective").get<std::string>();
    out.trace.config = run_config_from_json(h.at("config"));
    out.model = perturbation_from_json(h.at("perturbation"));
    out.trace.perturbation = describe(out.model);
    out.trace.eps = h.at("eps").get<double>();
    out.trace.alpha = h.at("alpha").get<double>();
    out.trace.selection_gap = h.at("selection_gap").get<double>();
    out.trace.stop = stop_reason_from_string(h.at("stop_reason").get<std::string>());
    out.trace.best_index = h.at("best_index").get<std::size_t>();
    out.trace.returned_point = h.at("returned_point").get<Point>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("bad trace header: ") + e.what());
  }

  const Objective& objective = lookup(out.trace.objective_name).objective;
  std::ifstream cs(csv_path, std::ios::binary);
  if (!cs) throw ValidationError("cannot read trace " + csv_path.string());
  std::string line;
  if (!std::getline(cs, line) || line != kTraceColumns) throw ValidationError("unexpected trace columns");
  while (std::getline(cs, line)) {
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != 8) throw ValidationError("trace row with " + std::to_string(cells.size()) + " cells");
    IterationRecord r;
    r.k = parse_count(cells[0]);
    for (const auto& c : split(cells[1], ';')) r.x.push_back(parse_double(c));
    if (r.x.size() != objective.dimension()) throw ValidationError("trace point has the wrong dimension");
    r.y = parse_double(cells[2]);
    r.m = parse_count(cells[3]);
    r.fhat_star = parse_double(cells[4]);
    r.f_star = parse_double(cells[5]);
    r.evals_cum = parse_count(cells[6]);
    r.f_value = objective(r.x);
    out.trace.records.push_back(std::move(r));
  }
  if (out.trace.records.empty()) throw ValidationError("trace has no rows");
  return out;
}

}  // namespace piyavskii
