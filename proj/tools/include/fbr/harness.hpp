#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fbr/expansion.hpp"

namespace fbr {

struct RadiusGridConfig {
  double min = 25.0;
  double max = 200.0;
  double ratio = 2.0;
};

/// Settings for every experiment. JSON keys are the field names; unknown
/// keys are rejected. `quad_panels_per_wavelength` is accepted as an alias
/// of `quad_panels`.
struct RunConfig {
  double nu = 0.0;
  double delta = 1.0;
  double R = 50.0;
  unsigned r_delayed = 2;
  std::size_t n_modes = 20;
  RadiusGridConfig R_grid;
  std::size_t grid_points = 2048;
  int quad_panels = 4;
  std::uint64_t seed = 1;
  std::string output_dir = "out";
  /// Experiment tag for `run` when not given on the command line.
  std::optional<std::string> kind;
  /// Lebesgue exponent for norm-curve and weak-type; 0 means "use the
  /// critical exponent".
  double p = 0.0;
  std::string growth_kind = "noweak";
  /// Test function for coeffs / riesz / delayed / convergence:
  /// "one", "x(1-x)", "psi:J", "power:G" (x^-G) or "indicator:A:B".
  std::string function = "x(1-x)";
  std::size_t family_size = 20;
  /// Grid size per axis of the kernel sweep.
  std::size_t sweep_points = 160;
};

/// Throws ConfigError naming the offending field.
RunConfig parse_config(std::string_view json_text);
RunConfig load_config(const std::filesystem::path& path);
void validate(const RunConfig& config);
std::string config_to_json(const RunConfig& config);

/// R_min * ratio^k below R_max, then R_max.
std::vector<double> radius_list(const RunConfig& config);

enum class ExperimentKind { orthonormality, kernel_sweep, kernel_zero, norm_curve, growth, weak_type, delayed, convergence };
std::string_view experiment_name(ExperimentKind kind);
std::optional<ExperimentKind> parse_experiment(std::string_view name);

/// One probe run: the CSV it wrote, scalar summaries and a verdict.
struct ProbeOutcome {
  bool passed = true;
  std::string message;
  std::map<std::string, double> summary;
  std::uint64_t zero_checksum = 0;
};

/// Runs the probe and writes its CSV to `csv` (temp file + rename).
ProbeOutcome run_probe(const RunConfig& config, ExperimentKind kind, const std::filesystem::path& csv);

struct RunResult {
  int exit_code = 0;
  std::filesystem::path csv;
  std::filesystem::path manifest;
  ProbeOutcome outcome;
};

/// run_probe into output_dir/<kind>.csv plus output_dir/<kind>.json holding
/// the config echo, library version, wall time, summary and the zero-table
/// checksum. Exit code 0 on success, 1 on a failed probe.
RunResult run_experiment(const RunConfig& config, ExperimentKind kind);

/// Rows of already formatted cells under a mandatory header.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);
  void add(std::vector<std::string> row);
  std::string text() const;
  void write_atomic(const std::filesystem::path& path) const;
  std::size_t rows() const noexcept { return rows_.size(); }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text_atomic(const std::filesystem::path& path, std::string_view text);

/// The `function` config value as a RadialFunction; psi:J needs J <= table
/// size. Throws ConfigError("function", ...).
RadialFunction test_function(std::string_view spec, const ZeroTable& table);

std::string_view library_version();

}  // namespace fbr
