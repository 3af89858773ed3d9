#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qoct/fields.hpp"
#include "qoct/landscape.hpp"
#include "qoct/optimizers.hpp"
#include "qoct/systems.hpp"

namespace qoct {

/// Everything needed to reproduce a batch: system family, target, field
/// synthesis parameters, optimizer choice, and output destination.
struct ExperimentConfig {
  // System.
  std::string drift = "rotor";          // rotor | oscillator | custom
  std::string drift_file;               // for custom
  std::string dipole = "flat";          // flat | D | banded | sparse | tensor | custom
  double dipole_D = 1.0;
  int dipole_bands = 1;
  double dipole_fraction = 0.5;
  double dipole_alpha = 1.0;
  std::string dipole_file;

  // Target.
  std::string target = "haar";          // identity | haar | qft | custom
  std::string target_file;

  // Batch shape.
  std::vector<int> n_list = {4};
  int seeds = 20;
  std::uint64_t seed_base = 0;          // run i uses seed_base + i

  // Initial field.
  double fluence_target = 10.0;         // f
  int n_frequencies = 20;               // K
  std::string spacing = "random";       // random | even
  std::optional<double> T;
  std::optional<int> n_points;

  // Optimizer.
  std::string optimizer = "flow";       // flow | pmp
  double threshold = 1e-6;
  int max_iterations = 200000;
  double fluence_penalty = 0.0;
  double pmp_alpha = 1.0;
  double pmp_beta = 0.0;                // 0 = default scale

  // Metrics and output.
  bool record_slope = false;
  bool record_saddle = true;
  bool record_gramian = false;
  std::string output_dir;

  void validate() const;  // throws std::invalid_argument
};

/// `key = value` file with optional `[section]` headers; keys may also be
/// written as section.key. '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& path);

/// Applies recognized keys onto a config; unknown keys throw.
void apply_config_entries(ExperimentConfig& config,
                          const std::map<std::string, std::string>& entries);

struct SaddleRecord {
  double J_at_min = 0.0;
  double S_min = 1.0;
  int nearest_m = 0;
};

struct RunRecord {
  std::uint64_t seed = 0;
  int dim = 0;
  bool failed = false;
  std::string error;
  OptimizationRun run;
  std::optional<SaddleRecord> saddle;
};

struct StatsSummary {
  int n_seeds = 0;
  int n_converged = 0;
  double convergence_fraction = 0.0;
  double mean_effort = 0.0;  // over converged runs
  std::optional<double> std_effort;  // population std; absent for <2 runs
  // Fractions of runs whose minimal saddle metric dipped below 0.1/0.05/0.01,
  // with the conditional mean effort of those runs.
  std::array<double, 3> saddle_fraction = {0.0, 0.0, 0.0};
  std::array<double, 3> saddle_conditional_mean = {0.0, 0.0, 0.0};
};

inline constexpr std::array<double, 3> kSaddleThresholds = {0.1, 0.05, 0.01};

struct BatchResult {
  StatsSummary summary;
  std::vector<RunRecord> records;
};

/// Builds the seeded system/target/field for one run of the config.
struct PreparedRun {
  ControlSystem system;
  ComplexMatrix target;
  ControlField field0;
};
PreparedRun prepare_run(const ExperimentConfig& config, int dim,
                        std::uint64_t seed);

/// Executes one seeded optimization.
RunRecord execute_run(const ExperimentConfig& config, int dim,
                      std::uint64_t seed);

/// Runs config.seeds optimizations at the first (or given) N, in parallel up
/// to the WORKERS environment cap, and aggregates Table-1-style statistics.
/// Writes summary.csv, runs/<seed>.json and spectra when output_dir is set.
BatchResult run_batch(const ExperimentConfig& config,
                      std::optional<int> dim_override = std::nullopt);

StatsSummary summarize(const std::vector<RunRecord>& records);

struct ScalingResult {
  std::vector<std::pair<int, StatsSummary>> cells;
  std::optional<double> log_effort_slope;  // d ln(mean effort) / dN
};

/// Batches over every N in config.n_list plus the semi-log effort slope.
ScalingResult scaling_study(const ExperimentConfig& config);

struct LandscapeReport {
  // Slope at the first crossing of each milestone, keyed by the milestone J.
  std::vector<std::pair<double, double>> slope_at_milestone;
  std::optional<double> curvature_at_optimum;
  std::vector<double> path_ratio_trace;
  std::vector<double> saddle_trace;
  std::vector<double> gramian_condition_trace;
  std::optional<SignatureCensus> signature_at_optimum;
  std::vector<std::pair<std::string, FieldSpectrum>> spectra;  // labelled
  std::vector<std::string> gaps;  // traces that were not recorded
};

/// Post-processes a finished run; recomputes endpoint quantities from the
/// stored fields, and reports which traces were unavailable.
LandscapeReport landscape_profile(const RunRecord& record,
                                  const ControlSystem& system,
                                  const ComplexMatrix& target);

// Serialization.
std::string run_record_to_json(const RunRecord& record,
                               const ExperimentConfig& config);
RunRecord run_record_from_json(const std::string& text);
void write_batch_outputs(const ExperimentConfig& config,
                         const BatchResult& result, int dim);
std::string summary_csv(const std::vector<std::pair<int, StatsSummary>>& cells);
std::string landscape_report_json(const LandscapeReport& report);

/// WORKERS environment variable, else hardware concurrency.
int worker_count();

}  // namespace qoct
