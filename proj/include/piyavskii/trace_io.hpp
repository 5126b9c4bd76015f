// trace_io.hpp
//
// Run traces on disk: a CSV body plus a JSON header with the same stem.
// Everything except the header's "metadata" field is a pure function of the
// run, so repeated runs produce byte-identical files.

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "piyavskii/optimizers.hpp"
#include "piyavskii/perturbation.hpp"

namespace piyavskii {

inline constexpr int kTraceFormatVersion = 1;
inline constexpr const char* kTraceColumns = "k,x,y,m_k,fhat_star,f_star,evals_cum,regret_best_so_far";

/// 17 significant digits, '.' decimal point; "nan", "inf", "-inf" otherwise.
std::string format_double(double v);
double parse_double(const std::string& text);

nlohmann::json run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const nlohmann::json& j);
nlohmann::json perturbation_to_json(const PerturbationModel& model);
PerturbationModel perturbation_from_json(const nlohmann::json& j);

/// The CSV text, LF line endings. The regret column is empty when the
/// objective does not declare f(x*).
std::string trace_csv(const RunTrace& trace, const Objective& objective);
nlohmann::json trace_header(const RunTrace& trace, const PerturbationModel& model,
                            const nlohmann::json& metadata = nlohmann::json::object());

std::filesystem::path header_path(const std::filesystem::path& csv_path);

/// Writes through a temporary file and a rename, so a failure never leaves a
/// partial file behind.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
void write_trace(const std::filesystem::path& csv_path, const RunTrace& trace, const Objective& objective,
                 const PerturbationModel& model, const nlohmann::json& metadata = nlohmann::json::object());

struct LoadedTrace {
  RunTrace trace;
  PerturbationModel model;
  nlohmann::json header;
};

/// Reads a trace and its header. f(x_k) is recomputed through the objective
/// registry, so the header's objective name must be registered.
LoadedTrace read_trace(const std::filesystem::path& csv_path);

}  // namespace piyavskii
