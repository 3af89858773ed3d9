#include "qoct/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "qoct/lie.hpp"
#include "qoct/objective.hpp"
#include "qoct/propagation.hpp"

namespace qoct {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

bool one_of(const std::string& value, std::initializer_list<const char*> set) {
  for (const char* s : set) {
    if (value == s) return true;
  }
  return false;
}

json field_to_json(const ControlField& field) {
  json j;
  j["T"] = field.grid.T;
  j["n_points"] = field.grid.n_points;
  j["samples"] = std::vector<double>(field.samples.begin(),
                                     field.samples.end());
  return j;
}

ControlField field_from_json(const json& j) {
  ControlField field{TimeGrid{j.at("T").get<double>(),
                              j.at("n_points").get<int>()},
                     RealVector()};
  const auto samples = j.at("samples").get<std::vector<double>>();
  field.samples = Eigen::Map<const RealVector>(
      samples.data(), static_cast<Eigen::Index>(samples.size()));
  return field;
}

RunStatus status_from_string(const std::string& s) {
  if (s == "converged") return RunStatus::kConverged;
  if (s == "stalled") return RunStatus::kStalled;
  return RunStatus::kMaxIterations;
}

}  // namespace

void ExperimentConfig::validate() const {
  if (!one_of(drift, {"rotor", "oscillator", "custom"})) {
    throw std::invalid_argument("config: unknown drift '" + drift + "'");
  }
  if (drift == "custom" && drift_file.empty()) {
    throw std::invalid_argument("config: custom drift needs drift_file");
  }
  if (!one_of(dipole,
              {"flat", "D", "banded", "sparse", "tensor", "custom"})) {
    throw std::invalid_argument("config: unknown dipole '" + dipole + "'");
  }
  if (dipole == "custom" && dipole_file.empty()) {
    throw std::invalid_argument("config: custom dipole needs dipole_file");
  }
  if (dipole == "D" && (dipole_D <= 0.0 || dipole_D > 1.0)) {
    throw std::invalid_argument("config: dipole_D must lie in (0, 1]");
  }
  if (!one_of(target, {"identity", "haar", "qft", "custom"})) {
    throw std::invalid_argument("config: unknown target '" + target + "'");
  }
  if (target == "custom" && target_file.empty()) {
    throw std::invalid_argument("config: custom target needs target_file");
  }
  if (n_list.empty()) {
    throw std::invalid_argument("config: n_list must not be empty");
  }
  for (int n : n_list) {
    if (n < 2) throw std::invalid_argument("config: N must be >= 2");
  }
  if (seeds < 0) throw std::invalid_argument("config: seeds must be >= 0");
  if (fluence_target <= 0.0) {
    throw std::invalid_argument("config: fluence must be positive");
  }
  if (n_frequencies < 1) {
    throw std::invalid_argument("config: n_frequencies must be >= 1");
  }
  if (!one_of(spacing, {"random", "even"})) {
    throw std::invalid_argument("config: spacing must be random or even");
  }
  if (!one_of(optimizer, {"flow", "pmp"})) {
    throw std::invalid_argument("config: optimizer must be flow or pmp");
  }
  if (threshold <= 0.0 || threshold >= 1.0) {
    throw std::invalid_argument("config: threshold must lie in (0, 1)");
  }
  if (max_iterations < 1) {
    throw std::invalid_argument("config: max_iterations must be >= 1");
  }
  if (pmp_alpha < 0.0 || pmp_alpha > 1.0) {
    throw std::invalid_argument("config: pmp_alpha must lie in [0, 1]");
  }
  if (pmp_beta > 0.0) {
    throw std::invalid_argument("config: pmp_beta must be <= 0");
  }
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::map<std::string, std::string> entries;
  std::string line, section;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: line " + std::to_string(line_no) +
                               " of " + path + " is not key = value");
    }
    std::string key = trim(line.substr(0, eq));
    if (!section.empty() && key.find('.') == std::string::npos) {
      key = section + "." + key;
    }
    entries[key] = trim(line.substr(eq + 1));
  }
  return entries;
}

void apply_config_entries(ExperimentConfig& config,
                          const std::map<std::string, std::string>& entries) {
  for (const auto& [full_key, value] : entries) {
    const auto dot = full_key.rfind('.');
    const std::string key =
        dot == std::string::npos ? full_key : full_key.substr(dot + 1);
    if (key == "drift") {
      config.drift = value;
    } else if (key == "drift_file") {
      config.drift_file = value;
    } else if (key == "dipole") {
      config.dipole = value;
    } else if (key == "dipole_D" || key == "D") {
      config.dipole_D = std::stod(value);
    } else if (key == "bands") {
      config.dipole_bands = std::stoi(value);
    } else if (key == "fraction") {
      config.dipole_fraction = std::stod(value);
    } else if (key == "alpha" && full_key.find("pmp") == std::string::npos) {
      config.dipole_alpha = std::stod(value);
    } else if (key == "dipole_file") {
      config.dipole_file = value;
    } else if (key == "target") {
      config.target = value;
    } else if (key == "target_file") {
      config.target_file = value;
    } else if (key == "N") {
      config.n_list.clear();
      std::istringstream list(value);
      std::string token;
      while (std::getline(list, token, ',')) {
        config.n_list.push_back(std::stoi(trim(token)));
      }
    } else if (key == "seeds") {
      config.seeds = std::stoi(value);
    } else if (key == "seed_base" || key == "seed") {
      config.seed_base = std::stoull(value);
    } else if (key == "fluence" || key == "f") {
      config.fluence_target = std::stod(value);
    } else if (key == "n_frequencies" || key == "K") {
      config.n_frequencies = std::stoi(value);
    } else if (key == "spacing") {
      config.spacing = value;
    } else if (key == "T") {
      config.T = std::stod(value);
    } else if (key == "n_points") {
      config.n_points = std::stoi(value);
    } else if (key == "optimizer") {
      config.optimizer = value;
    } else if (key == "threshold") {
      config.threshold = std::stod(value);
    } else if (key == "max_iterations") {
      config.max_iterations = std::stoi(value);
    } else if (key == "fluence_penalty" || key == "lambda") {
      config.fluence_penalty = std::stod(value);
    } else if (key == "pmp_alpha") {
      config.pmp_alpha = std::stod(value);
    } else if (key == "pmp_beta") {
      config.pmp_beta = std::stod(value);
    } else if (key == "record_slope") {
      config.record_slope = value == "true" || value == "1";
    } else if (key == "record_saddle") {
      config.record_saddle = value == "true" || value == "1";
    } else if (key == "record_gramian") {
      config.record_gramian = value == "true" || value == "1";
    } else if (key == "output_dir") {
      config.output_dir = value;
    } else {
      throw std::invalid_argument("config: unknown key '" + full_key + "'");
    }
  }
}

PreparedRun prepare_run(const ExperimentConfig& config, int dim,
                        std::uint64_t seed) {
  DriftHamiltonian drift;
  if (config.drift == "rotor") {
    drift = build_rotor_drift(dim);
  } else if (config.drift == "oscillator") {
    drift = build_oscillator_drift(dim);
  } else {
    drift = load_drift(config.drift_file);
  }

  ControlHamiltonian dipole;
  if (config.dipole == "flat") {
    dipole = build_dipole_flat(dim, config.dipole_alpha, seed);
  } else if (config.dipole == "D") {
    dipole = build_dipole_D(dim, config.dipole_D, config.dipole_alpha, seed);
  } else if (config.dipole == "banded") {
    dipole = build_dipole_banded(dim, config.dipole_bands, config.dipole_alpha,
                                 seed);
  } else if (config.dipole == "sparse") {
    dipole = build_dipole_sparse(dim, config.dipole_fraction,
                                 config.dipole_alpha, seed);
  } else if (config.dipole == "tensor") {
    // The builder takes a qubit count; dim must be a power of two.
    int n_qubits = 0;
    while ((1 << (n_qubits + 1)) <= dim) ++n_qubits;
    if ((1 << n_qubits) != dim) {
      throw std::invalid_argument(
          "config: tensor dipole needs N to be a power of two");
    }
    dipole = build_dipole_tensor(n_qubits, config.dipole_alpha);
  } else {
    dipole = load_dipole(config.dipole_file);
  }

  PreparedRun out{ControlSystem{std::move(drift), std::move(dipole)},
                  ComplexMatrix(), ControlField{}};

  if (config.target == "identity") {
    out.target = build_identity_gate(dim).matrix;
  } else if (config.target == "haar") {
    out.target = build_haar_gate(dim, seed).matrix;
  } else if (config.target == "qft") {
    out.target = build_qft_gate(dim).matrix;
  } else {
    out.target = load_gate(config.target_file).matrix;
  }

  TimeGrid grid = default_grid(out.system, config.T);
  if (config.n_points) {
    grid.n_points = *config.n_points;
    validate_grid(grid, out.system);
  }
  out.field0 = initial_field(grid, config.n_frequencies, config.fluence_target,
                             seed, out.system,
                             config.spacing == "even"
                                 ? FrequencySpacing::kEven
                                 : FrequencySpacing::kRandom);
  return out;
}

RunRecord execute_run(const ExperimentConfig& config, int dim,
                      std::uint64_t seed) {
  RunRecord record;
  record.seed = seed;
  record.dim = dim;
  try {
    PreparedRun prepared = prepare_run(config, dim, seed);
    const MetricFlags flags{config.record_slope, config.record_saddle,
                            config.record_gramian};
    if (config.optimizer == "flow") {
      FlowConfig fc;
      fc.convergence_threshold = config.threshold;
      fc.max_iterations = config.max_iterations;
      fc.fluence_penalty = config.fluence_penalty;
      fc.record = flags;
      record.run = gradient_flow(prepared.system, prepared.target,
                                 prepared.field0, fc);
    } else {
      PMPConfig pc;
      pc.alpha = config.pmp_alpha;
      pc.beta = config.pmp_beta;
      pc.convergence_threshold = config.threshold;
      pc.max_iterations = config.max_iterations;
      pc.record = flags;
      record.run = pmp_iterate(prepared.system, prepared.target,
                               prepared.field0, pc);
    }
    if (!record.run.saddle_trace.empty()) {
      SaddleRecord saddle;
      saddle.S_min = record.run.saddle_trace.front();
      std::size_t at = 0;
      for (std::size_t i = 1; i < record.run.saddle_trace.size(); ++i) {
        if (record.run.saddle_trace[i] < saddle.S_min) {
          saddle.S_min = record.run.saddle_trace[i];
          at = i;
        }
      }
      saddle.J_at_min = record.run.J_trace[at + 1];
      saddle.nearest_m =
          static_cast<int>(std::lround(saddle.J_at_min / 4.0));
      record.saddle = saddle;
    }
  } catch (const std::exception& e) {
    record.failed = true;
    record.error = e.what();
  }
  return record;
}

StatsSummary summarize(const std::vector<RunRecord>& records) {
  StatsSummary out;
  out.n_seeds = static_cast<int>(records.size());
  double sum = 0.0, sum_sq = 0.0;
  std::array<int, 3> saddle_count = {0, 0, 0};
  std::array<double, 3> saddle_effort = {0.0, 0.0, 0.0};
  for (const RunRecord& r : records) {
    if (r.failed || r.run.status != RunStatus::kConverged) continue;
    ++out.n_converged;
    const double effort = r.run.effort;
    sum += effort;
    sum_sq += effort * effort;
    if (r.saddle) {
      for (std::size_t t = 0; t < kSaddleThresholds.size(); ++t) {
        if (r.saddle->S_min < kSaddleThresholds[t]) {
          ++saddle_count[t];
          saddle_effort[t] += effort;
        }
      }
    }
  }
  if (out.n_seeds > 0) {
    out.convergence_fraction =
        static_cast<double>(out.n_converged) / out.n_seeds;
  }
  if (out.n_converged > 0) {
    out.mean_effort = sum / out.n_converged;
    for (std::size_t t = 0; t < kSaddleThresholds.size(); ++t) {
      out.saddle_fraction[t] =
          static_cast<double>(saddle_count[t]) / out.n_converged;
      if (saddle_count[t] > 0) {
        out.saddle_conditional_mean[t] = saddle_effort[t] / saddle_count[t];
      }
    }
  }
  if (out.n_converged >= 2) {
    const double variance =
        sum_sq / out.n_converged - out.mean_effort * out.mean_effort;
    out.std_effort = std::sqrt(std::max(variance, 0.0));
  }
  return out;
}

int worker_count() {
  if (const char* env = std::getenv("WORKERS")) {
    const int w = std::atoi(env);
    if (w > 0) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

BatchResult run_batch(const ExperimentConfig& config,
                      std::optional<int> dim_override) {
  config.validate();
  const int dim = dim_override.value_or(config.n_list.front());

  BatchResult result;
  result.records.resize(config.seeds);
  const int workers =
      std::max(1, std::min(worker_count(), config.seeds));

  std::atomic<int> next{0};
  auto work = [&]() {
    for (int i = next.fetch_add(1); i < config.seeds;
         i = next.fetch_add(1)) {
      result.records[i] = execute_run(config, dim, config.seed_base + i);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }

  // Records are already ordered by seed index; aggregation is sequential.
  result.summary = summarize(result.records);
  if (!config.output_dir.empty()) {
    write_batch_outputs(config, result, dim);
  }
  return result;
}

ScalingResult scaling_study(const ExperimentConfig& config) {
  config.validate();
  ScalingResult out;
  for (int n : config.n_list) {
    BatchResult batch = run_batch(config, n);
    out.cells.emplace_back(n, batch.summary);
  }
  // Least-squares slope of ln(mean effort) against N.
  std::vector<std::pair<double, double>> points;
  for (const auto& [n, stats] : out.cells) {
    if (stats.mean_effort > 0.0) {
      points.emplace_back(static_cast<double>(n),
                          std::log(stats.mean_effort));
    }
  }
  if (points.size() >= 2) {
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double m = points.size();
    const double denom = m * sxx - sx * sx;
    if (denom > 0.0) {
      out.log_effort_slope = (m * sxy - sx * sy) / denom;
    }
  }
  return out;
}

LandscapeReport landscape_profile(const RunRecord& record,
                                  const ControlSystem& system,
                                  const ComplexMatrix& target) {
  LandscapeReport report;
  const OptimizationRun& run = record.run;

  // Slope at milestone crossings, recomputed from the stored fields so the
  // report does not depend on the slope trace having been enabled.
  for (const Checkpoint& cp : run.field_checkpoints) {
    const GradientResult gr = objective_gradient(system, cp.field, target);
    report.slope_at_milestone.emplace_back(
        cp.milestone, slope_metric(gr.gradient, cp.field.grid));
  }

  if (run.final_field.size() > 0) {
    const GradientResult gr =
        objective_gradient(system, run.final_field, target);
    const HessianKernel kernel =
        hessian_kernel(system, run.final_field, target);
    report.signature_at_optimum = hessian_signature(kernel);
    if (gr.gradient.norm() > 0.0) {
      report.curvature_at_optimum = local_curvature(kernel, gr.gradient);
    }
    report.spectra.emplace_back("initial", fourier_spectrum(run.initial_field));
    for (const Checkpoint& cp : run.field_checkpoints) {
      std::ostringstream label;
      label << "J=" << cp.milestone;
      report.spectra.emplace_back(label.str(), fourier_spectrum(cp.field));
    }
    report.spectra.emplace_back("final", fourier_spectrum(run.final_field));
  }

  for (std::size_t i = 0; i < run.path_length_trace.size(); ++i) {
    const double displacement = run.displacement_trace[i];
    report.path_ratio_trace.push_back(
        displacement > 0.0 ? run.path_length_trace[i] / displacement : 1.0);
  }

  if (run.saddle_trace.empty()) {
    report.gaps.push_back("saddle_trace");
  } else {
    report.saddle_trace = run.saddle_trace;
  }
  if (run.gramian_condition_trace.empty()) {
    report.gaps.push_back("gramian_condition_trace");
  } else {
    report.gramian_condition_trace = run.gramian_condition_trace;
  }
  if (run.slope_trace.empty()) report.gaps.push_back("slope_trace");
  return report;
}

std::string run_record_to_json(const RunRecord& record,
                               const ExperimentConfig& config) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["seed"] = record.seed;
  j["N"] = record.dim;
  j["failed"] = record.failed;
  j["error"] = record.error;

  json cfg;
  cfg["drift"] = config.drift;
  cfg["dipole"] = config.dipole;
  cfg["dipole_D"] = config.dipole_D;
  cfg["dipole_bands"] = config.dipole_bands;
  cfg["dipole_fraction"] = config.dipole_fraction;
  cfg["dipole_alpha"] = config.dipole_alpha;
  cfg["target"] = config.target;
  cfg["fluence"] = config.fluence_target;
  cfg["n_frequencies"] = config.n_frequencies;
  cfg["spacing"] = config.spacing;
  cfg["optimizer"] = config.optimizer;
  cfg["threshold"] = config.threshold;
  cfg["max_iterations"] = config.max_iterations;
  cfg["fluence_penalty"] = config.fluence_penalty;
  cfg["pmp_alpha"] = config.pmp_alpha;
  cfg["pmp_beta"] = config.pmp_beta;
  j["config"] = cfg;

  const OptimizationRun& run = record.run;
  j["status"] = to_string(run.status);
  j["effort"] = run.effort;
  j["rejected_steps"] = run.rejected_steps;
  j["final_fidelity"] = run.final_fidelity;
  j["s_values"] = run.s_values;
  j["J_trace"] = run.J_trace;
  j["path_length_trace"] = run.path_length_trace;
  j["displacement_trace"] = run.displacement_trace;
  j["slope_trace"] = run.slope_trace;
  j["saddle_trace"] = run.saddle_trace;
  j["gramian_condition_trace"] = run.gramian_condition_trace;
  if (run.initial_field.size() > 0) {
    j["initial_field"] = field_to_json(run.initial_field);
  }
  if (run.final_field.size() > 0) {
    j["final_field"] = field_to_json(run.final_field);
  }
  json checkpoints = json::array();
  for (const Checkpoint& cp : run.field_checkpoints) {
    json c;
    c["milestone"] = cp.milestone;
    c["J"] = cp.J;
    c["s"] = cp.s;
    c["field"] = field_to_json(cp.field);
    checkpoints.push_back(std::move(c));
  }
  j["checkpoints"] = std::move(checkpoints);
  if (run.min_saddle) {
    json m;
    m["S"] = run.min_saddle->S;
    m["J"] = run.min_saddle->J;
    m["s"] = run.min_saddle->s;
    m["field"] = field_to_json(run.min_saddle->field);
    j["min_saddle"] = std::move(m);
  }
  if (record.saddle) {
    json s;
    s["J_at_min"] = record.saddle->J_at_min;
    s["S_min"] = record.saddle->S_min;
    s["nearest_m"] = record.saddle->nearest_m;
    j["saddle"] = std::move(s);
  }
  return j.dump(2);
}

RunRecord run_record_from_json(const std::string& text) {
  const json j = json::parse(text);
  if (j.at("schema_version").get<int>() != kSchemaVersion) {
    throw std::runtime_error("run record: unsupported schema_version");
  }
  RunRecord record;
  record.seed = j.at("seed").get<std::uint64_t>();
  record.dim = j.at("N").get<int>();
  record.failed = j.at("failed").get<bool>();
  record.error = j.at("error").get<std::string>();
  OptimizationRun& run = record.run;
  run.status = status_from_string(j.at("status").get<std::string>());
  run.effort = j.at("effort").get<int>();
  run.rejected_steps = j.at("rejected_steps").get<int>();
  run.final_fidelity = j.at("final_fidelity").get<double>();
  run.s_values = j.at("s_values").get<std::vector<double>>();
  run.J_trace = j.at("J_trace").get<std::vector<double>>();
  run.path_length_trace =
      j.at("path_length_trace").get<std::vector<double>>();
  run.displacement_trace =
      j.at("displacement_trace").get<std::vector<double>>();
  run.slope_trace = j.at("slope_trace").get<std::vector<double>>();
  run.saddle_trace = j.at("saddle_trace").get<std::vector<double>>();
  run.gramian_condition_trace =
      j.at("gramian_condition_trace").get<std::vector<double>>();
  if (j.contains("initial_field")) {
    run.initial_field = field_from_json(j.at("initial_field"));
  }
  if (j.contains("final_field")) {
    run.final_field = field_from_json(j.at("final_field"));
  }
  for (const json& c : j.at("checkpoints")) {
    run.field_checkpoints.push_back({c.at("milestone").get<double>(),
                                     c.at("J").get<double>(),
                                     c.at("s").get<double>(),
                                     field_from_json(c.at("field"))});
  }
  if (j.contains("min_saddle")) {
    const json& m = j.at("min_saddle");
    run.min_saddle = SaddleSnapshot{m.at("S").get<double>(),
                                    m.at("J").get<double>(),
                                    m.at("s").get<double>(),
                                    field_from_json(m.at("field"))};
  }
  if (j.contains("saddle")) {
    record.saddle = SaddleRecord{j["saddle"].at("J_at_min").get<double>(),
                                 j["saddle"].at("S_min").get<double>(),
                                 j["saddle"].at("nearest_m").get<int>()};
  }
  return record;
}

std::string summary_csv(
    const std::vector<std::pair<int, StatsSummary>>& cells) {
  std::ostringstream out;
  out.precision(17);
  out << "# std_effort is the population standard deviation over converged "
         "runs; empty for fewer than two\n";
  out << "N,seeds,converged,convergence_fraction,mean_effort,std_effort,"
         "frac_S_lt_0.1,frac_S_lt_0.05,frac_S_lt_0.01,"
         "cond_mean_S_lt_0.1,cond_mean_S_lt_0.05,cond_mean_S_lt_0.01\n";
  for (const auto& [n, s] : cells) {
    out << n << "," << s.n_seeds << "," << s.n_converged << ","
        << s.convergence_fraction << "," << s.mean_effort << ",";
    if (s.std_effort) out << *s.std_effort;
    for (int t = 0; t < 3; ++t) out << "," << s.saddle_fraction[t];
    for (int t = 0; t < 3; ++t) out << "," << s.saddle_conditional_mean[t];
    out << "\n";
  }
  return out.str();
}

void write_batch_outputs(const ExperimentConfig& config,
                         const BatchResult& result, int dim) {
  namespace fs = std::filesystem;
  const fs::path root(config.output_dir);
  fs::create_directories(root / "runs");
  fs::create_directories(root / "spectra");

  {
    std::ofstream out(root / "summary.csv");
    out << summary_csv({{dim, result.summary}});
  }
  for (const RunRecord& record : result.records) {
    const std::string name = std::to_string(record.seed);
    std::ofstream out(root / "runs" / (name + ".json"));
    out << run_record_to_json(record, config) << "\n";
    if (record.failed) continue;

    auto write_spectrum = [&](const std::string& milestone,
                              const ControlField& field) {
      if (field.size() == 0) return;
      const FieldSpectrum spectrum = fourier_spectrum(field);
      std::ofstream csv(root / "spectra" / (name + "_" + milestone + ".csv"));
      csv << "omega,magnitude\n";
      csv.precision(17);
      for (int i = 0; i < spectrum.frequencies.size(); ++i) {
        csv << spectrum.frequencies(i) << "," << spectrum.magnitudes(i)
            << "\n";
      }
    };
    write_spectrum("initial", record.run.initial_field);
    for (const Checkpoint& cp : record.run.field_checkpoints) {
      std::ostringstream label;
      label << "J" << cp.milestone;
      write_spectrum(label.str(), cp.field);
    }
    write_spectrum("final", record.run.final_field);
  }
}

std::string landscape_report_json(const LandscapeReport& report) {
  json j;
  json slopes = json::array();
  for (const auto& [milestone, slope] : report.slope_at_milestone) {
    slopes.push_back({{"milestone", milestone}, {"slope", slope}});
  }
  j["slope_at_milestone"] = std::move(slopes);
  if (report.curvature_at_optimum) {
    j["curvature_at_optimum"] = *report.curvature_at_optimum;
  }
  j["path_ratio_trace"] = report.path_ratio_trace;
  j["saddle_trace"] = report.saddle_trace;
  j["gramian_condition_trace"] = report.gramian_condition_trace;
  if (report.signature_at_optimum) {
    j["signature_at_optimum"] = {
        {"n_positive", report.signature_at_optimum->n_positive},
        {"n_negative", report.signature_at_optimum->n_negative},
        {"n_zero", report.signature_at_optimum->n_zero}};
  }
  json spectra = json::array();
  for (const auto& [label, spectrum] : report.spectra) {
    spectra.push_back(
        {{"label", label},
         {"frequencies", std::vector<double>(spectrum.frequencies.begin(),
                                             spectrum.frequencies.end())},
         {"magnitudes", std::vector<double>(spectrum.magnitudes.begin(),
                                            spectrum.magnitudes.end())}});
  }
  j["spectra"] = std::move(spectra);
  j["gaps"] = report.gaps;
  return j.dump(2);
}

}  // namespace qoct
