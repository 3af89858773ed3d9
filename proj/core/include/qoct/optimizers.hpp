#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qoct/fields.hpp"
#include "qoct/matrix.hpp"
#include "qoct/objective.hpp"
#include "qoct/systems.hpp"

namespace qoct {

struct MetricFlags {
  bool slope = false;
  bool saddle = false;
  bool gramian = false;
};

struct FlowConfig {
  double rel_tol = 1e-3;
  double abs_tol = 1e-6;
  double convergence_threshold = 1e-6;  // fraction of J_max = 4N
  int max_iterations = 200000;
  double fluence_penalty = 0.0;  // lambda, adds lambda*eps to the flow RHS
  double initial_step = 1e-2;
  double min_step = 1e-8;
  double max_step = 10.0;
  std::vector<double> milestones = {2.0, 1.0, 0.1, 0.01};
  MetricFlags record;
};

struct PMPConfig {
  double alpha = 1.0;   // 1 = Mayer cost, 0 = Bolza cost
  double beta = 0.0;    // < 0 for minimization; 0 selects the default scale
  double convergence_threshold = 1e-6;
  int max_iterations = 200000;
  std::vector<double> milestones = {2.0, 1.0, 0.1, 0.01};
  MetricFlags record;
};

enum class RunStatus { kConverged, kMaxIterations, kStalled };

std::string to_string(RunStatus status);

struct Checkpoint {
  double milestone = 0.0;  // the J threshold that triggered the snapshot
  double J = 0.0;
  double s = 0.0;
  ControlField field;
};

/// Field at the trajectory point of minimal saddle metric (recorded when the
/// saddle trace is enabled), for post-hoc Hessian analysis near saddles.
struct SaddleSnapshot {
  double S = 1.0;
  double J = 0.0;
  double s = 0.0;
  ControlField field;
};

/// Record of one optimization: the unit of experiment.
struct OptimizationRun {
  std::vector<double> s_values;  // flow parameter after each accepted step
  std::vector<double> J_trace;   // J at start plus after each accepted step
  std::vector<Checkpoint> field_checkpoints;
  int effort = 0;          // accepted steps only
  int rejected_steps = 0;  // logged separately
  RunStatus status = RunStatus::kMaxIterations;
  ControlField initial_field;
  ControlField final_field;
  double final_fidelity = 0.0;
  // Per-accepted-step scalars for path-ratio reconstruction.
  std::vector<double> path_length_trace;
  std::vector<double> displacement_trace;
  // Optional per-step metric traces.
  std::vector<double> slope_trace;
  std::vector<double> saddle_trace;
  std::vector<double> gramian_condition_trace;
  std::optional<SaddleSnapshot> min_saddle;
};

/// Thrown when the objective turns non-finite; carries the last good state.
class OptimizationError : public std::runtime_error {
 public:
  OptimizationError(const std::string& what, OptimizationRun last_good)
      : std::runtime_error(what), last_good_state(std::move(last_good)) {}
  OptimizationRun last_good_state;
};

/// Integrates d eps/ds = -gradient - lambda*eps with a Dormand-Prince 4(5)
/// pair and proportional step control. Accepted steps count as effort; steps
/// that would raise J (at lambda = 0) are rejected.
OptimizationRun gradient_flow(const ControlSystem& system,
                              const ComplexMatrix& target,
                              const ControlField& field0,
                              const FlowConfig& config);

/// Discrete PMP iteration: a backward costate sweep from the kinematic
/// gradient at U(T) interleaved with the first field update, then a forward
/// sweep applying the second update. Each iteration is one unit of effort.
OptimizationRun pmp_iterate(const ControlSystem& system,
                            const ComplexMatrix& target,
                            const ControlField& field0,
                            const PMPConfig& config);

/// True iff J <= threshold * 4N.
bool convergence_check(double J, int dim, double threshold);

}  // namespace qoct
