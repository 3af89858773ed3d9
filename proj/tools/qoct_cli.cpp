// Command-line front end: single runs, batches, scaling studies, landscape
// profiling, Lie-closure analysis, and field spectra.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qoct/fields.hpp"
#include "qoct/harness.hpp"
#include "qoct/landscape.hpp"
#include "qoct/lie.hpp"
#include "qoct/objective.hpp"
#include "qoct/optimizers.hpp"
#include "qoct/systems.hpp"

namespace {

struct CliState {
  qoct::ExperimentConfig config;
  std::string config_file;
  std::string n_spec;
  bool has_T = false;
  double T_value = 14.0;
  bool has_n_points = false;
  int n_points_value = 0;
};

void add_common_options(CLI::App* cmd, CliState& state, bool require_seed) {
  cmd->add_option("--config", state.config_file,
                  "key = value config file; flags override it");
  cmd->add_option("--drift", state.config.drift,
                  "rotor | oscillator | custom");
  cmd->add_option("--drift-file", state.config.drift_file);
  cmd->add_option("--dipole", state.config.dipole,
                  "flat | D | banded | sparse | tensor | custom");
  cmd->add_option("--D", state.config.dipole_D, "dipole decay parameter");
  cmd->add_option("--bands", state.config.dipole_bands);
  cmd->add_option("--fraction", state.config.dipole_fraction);
  cmd->add_option("--alpha", state.config.dipole_alpha,
                  "diagonal dipole element");
  cmd->add_option("--dipole-file", state.config.dipole_file);
  cmd->add_option("--target", state.config.target,
                  "identity | haar | qft | custom");
  cmd->add_option("--target-file", state.config.target_file);
  cmd->add_option("--N", state.n_spec, "dimension, or comma list for scaling");
  auto* seed = cmd->add_option("--seed", state.config.seed_base,
                               "base RNG seed");
  if (require_seed) seed->required();
  cmd->add_option("--seeds", state.config.seeds, "number of runs in a batch");
  cmd->add_option("--f", state.config.fluence_target,
                  "initial-field fluence");
  cmd->add_option("--K", state.config.n_frequencies,
                  "initial-field Fourier components");
  cmd->add_option("--spacing", state.config.spacing, "random | even");
  cmd->add_option("--T", state.T_value, "control horizon")
      ->each([&state](const std::string&) { state.has_T = true; });
  cmd->add_option("--n-points", state.n_points_value, "grid override")
      ->each([&state](const std::string&) { state.has_n_points = true; });
  cmd->add_option("--optimizer", state.config.optimizer, "flow | pmp");
  cmd->add_option("--threshold", state.config.threshold,
                  "convergence threshold as a fraction of 4N");
  cmd->add_option("--max-iterations", state.config.max_iterations);
  cmd->add_option("--lambda", state.config.fluence_penalty,
                  "fluence penalty in the flow");
  cmd->add_option("--pmp-alpha", state.config.pmp_alpha);
  cmd->add_option("--pmp-beta", state.config.pmp_beta);
  cmd->add_flag("--record-slope", state.config.record_slope);
  cmd->add_flag("--record-gramian", state.config.record_gramian);
  cmd->add_flag("!--no-record-saddle", state.config.record_saddle,
                "disable the saddle-metric trace");
  cmd->add_option("--out", state.config.output_dir, "output directory");
}

void finalize(CliState& state) {
  if (!state.config_file.empty()) {
    // File values form the base; flags that were changed from their
    // defaults overlay them. (A flag explicitly set to its default value
    // cannot override the file; pick a different base in the file instead.)
    qoct::ExperimentConfig from_file;
    qoct::apply_config_entries(from_file,
                               qoct::parse_config_file(state.config_file));
    std::swap(state.config, from_file);
    const qoct::ExperimentConfig defaults;
    qoct::ExperimentConfig& file_cfg = state.config;
    const qoct::ExperimentConfig& flag_cfg = from_file;
#define QOCT_OVERLAY(field) \
  if (flag_cfg.field != defaults.field) file_cfg.field = flag_cfg.field;
    QOCT_OVERLAY(drift)
    QOCT_OVERLAY(drift_file)
    QOCT_OVERLAY(dipole)
    QOCT_OVERLAY(dipole_D)
    QOCT_OVERLAY(dipole_bands)
    QOCT_OVERLAY(dipole_fraction)
    QOCT_OVERLAY(dipole_alpha)
    QOCT_OVERLAY(dipole_file)
    QOCT_OVERLAY(target)
    QOCT_OVERLAY(target_file)
    QOCT_OVERLAY(seeds)
    QOCT_OVERLAY(seed_base)
    QOCT_OVERLAY(fluence_target)
    QOCT_OVERLAY(n_frequencies)
    QOCT_OVERLAY(spacing)
    QOCT_OVERLAY(optimizer)
    QOCT_OVERLAY(threshold)
    QOCT_OVERLAY(max_iterations)
    QOCT_OVERLAY(fluence_penalty)
    QOCT_OVERLAY(pmp_alpha)
    QOCT_OVERLAY(pmp_beta)
    QOCT_OVERLAY(record_slope)
    QOCT_OVERLAY(record_saddle)
    QOCT_OVERLAY(record_gramian)
    QOCT_OVERLAY(output_dir)
#undef QOCT_OVERLAY
  }
  if (!state.n_spec.empty()) {
    state.config.n_list.clear();
    std::istringstream list(state.n_spec);
    std::string token;
    while (std::getline(list, token, ',')) {
      state.config.n_list.push_back(std::stoi(token));
    }
  }
  if (state.has_T) state.config.T = state.T_value;
  if (state.has_n_points) state.config.n_points = state.n_points_value;
  state.config.validate();
}

void print_summary(const std::vector<std::pair<int, qoct::StatsSummary>>& cells) {
  std::cout << qoct::summary_csv(cells);
}

int cmd_optimize(CliState& state) {
  finalize(state);
  const int dim = state.config.n_list.front();
  qoct::RunRecord record =
      qoct::execute_run(state.config, dim, state.config.seed_base);
  if (record.failed) {
    std::cerr << "run failed: " << record.error << "\n";
    return 2;
  }
  std::printf("seed=%llu N=%d status=%s effort=%d J=%.6e fidelity=%.8f\n",
              static_cast<unsigned long long>(record.seed), dim,
              qoct::to_string(record.run.status).c_str(), record.run.effort,
              record.run.J_trace.back(), record.run.final_fidelity);
  if (!state.config.output_dir.empty()) {
    namespace fs = std::filesystem;
    fs::create_directories(fs::path(state.config.output_dir) / "runs");
    const fs::path path = fs::path(state.config.output_dir) / "runs" /
                          (std::to_string(record.seed) + ".json");
    std::ofstream out(path);
    out << qoct::run_record_to_json(record, state.config) << "\n";
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_batch(CliState& state) {
  finalize(state);
  qoct::BatchResult result = qoct::run_batch(state.config);
  print_summary({{state.config.n_list.front(), result.summary}});
  return 0;
}

int cmd_scaling(CliState& state) {
  finalize(state);
  if (state.config.n_list.size() < 2) {
    throw std::invalid_argument("scaling: need at least two values of N");
  }
  qoct::ScalingResult result = qoct::scaling_study(state.config);
  print_summary(result.cells);
  if (result.log_effort_slope) {
    std::printf("log_effort_slope,%.*g\n", 17, *result.log_effort_slope);
  } else {
    std::printf("log_effort_slope,\n");
  }
  return 0;
}

int cmd_landscape(CliState& state, const std::string& run_file) {
  finalize(state);
  std::ifstream in(run_file);
  if (!in) throw std::invalid_argument("cannot open run file " + run_file);
  std::stringstream buffer;
  buffer << in.rdbuf();
  qoct::RunRecord record = qoct::run_record_from_json(buffer.str());
  qoct::PreparedRun prepared =
      qoct::prepare_run(state.config, record.dim, record.seed);
  qoct::LandscapeReport report =
      qoct::landscape_profile(record, prepared.system, prepared.target);
  const std::string text = qoct::landscape_report_json(report);
  if (state.config.output_dir.empty()) {
    std::cout << text << "\n";
  } else {
    namespace fs = std::filesystem;
    fs::create_directories(state.config.output_dir);
    const fs::path path = fs::path(state.config.output_dir) /
                          ("landscape_" + std::to_string(record.seed) +
                           ".json");
    std::ofstream out(path);
    out << text << "\n";
    std::cout << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_lie(CliState& state) {
  finalize(state);
  for (int dim : state.config.n_list) {
    qoct::PreparedRun prepared =
        qoct::prepare_run(state.config, dim, state.config.seed_base);
    qoct::LieAnalysis analysis = qoct::lie_closure(
        prepared.system.drift.matrix, prepared.system.dipole.matrix);
    std::printf("N=%d rank=%d depth=%d controllable=%s\n", dim, analysis.rank,
                analysis.depth, analysis.controllable ? "yes" : "no");
  }
  return 0;
}

int cmd_spectra(const std::string& field_file, const std::string& out_file) {
  const qoct::ControlField field = qoct::read_field_csv(field_file);
  const qoct::FieldSpectrum spectrum = qoct::fourier_spectrum(field);
  std::ofstream out(out_file);
  if (!out) throw std::invalid_argument("cannot open " + out_file);
  out << "omega,magnitude\n";
  out.precision(17);
  for (int i = 0; i < spectrum.frequencies.size(); ++i) {
    out << spectrum.frequencies(i) << "," << spectrum.magnitudes(i) << "\n";
  }
  std::cout << "wrote " << out_file << " (" << spectrum.frequencies.size()
            << " bins)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Control-landscape laboratory for unitary-gate synthesis"};
  app.require_subcommand(1);

  CliState opt_state, batch_state, scaling_state, landscape_state, lie_state;
  std::string run_file, field_file, spectra_out;

  auto* optimize = app.add_subcommand("optimize", "run one optimization");
  add_common_options(optimize, opt_state, true);
  auto* batch = app.add_subcommand("batch", "run a seeded batch");
  add_common_options(batch, batch_state, true);
  auto* scaling = app.add_subcommand("scaling", "batch over a list of N");
  add_common_options(scaling, scaling_state, true);
  auto* landscape =
      app.add_subcommand("landscape", "profile a saved run record");
  add_common_options(landscape, landscape_state, false);
  landscape->add_option("--run", run_file, "run JSON file")->required();
  auto* lie = app.add_subcommand("lie", "Lie-closure analysis");
  add_common_options(lie, lie_state, false);
  auto* spectra = app.add_subcommand("spectra", "export a field's spectrum");
  spectra->add_option("--field", field_file, "field CSV")->required();
  spectra->add_option("--out-file", spectra_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
    if (optimize->parsed()) return cmd_optimize(opt_state);
    if (batch->parsed()) return cmd_batch(batch_state);
    if (scaling->parsed()) return cmd_scaling(scaling_state);
    if (landscape->parsed()) return cmd_landscape(landscape_state, run_file);
    if (lie->parsed()) return cmd_lie(lie_state);
    if (spectra->parsed()) return cmd_spectra(field_file, spectra_out);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // bad flags are config errors
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
