#include "qoct/optimizers.hpp"

#include <algorithm>
#include <cmath>

#include "qoct/landscape.hpp"
#include "qoct/propagation.hpp"

namespace qoct {

namespace {

struct Eval {
  RealVector rhs;       // flow right-hand side, -gradient - lambda*eps
  RealVector gradient;  // functional derivative of J alone
  double J = 0.0;
  double fidelity = 0.0;
  ComplexMatrix u_final;
};

Eval evaluate(const ControlSystem& system, const ComplexMatrix& target,
              const TimeGrid& grid, const RealVector& samples, double lambda) {
  ControlField field{grid, samples};
  GradientResult gr = objective_gradient(system, field, target);
  Eval out;
  out.gradient = std::move(gr.gradient);
  out.rhs = -out.gradient - lambda * samples;
  out.J = gr.value.J;
  out.fidelity = gr.value.fidelity;
  out.u_final = gr.trajectory.final_propagator();
  return out;
}

void record_metrics(OptimizationRun& run, const MetricFlags& flags,
                    const ControlSystem& system, const ComplexMatrix& target,
                    const TimeGrid& grid, const RealVector& samples,
                    const RealVector& gradient, const ComplexMatrix& u_final,
                    double j, double s_param) {
  if (flags.slope) {
    run.slope_trace.push_back(slope_metric(gradient, grid));
  }
  if (flags.saddle) {
    double s = 1.0;
    try {
      s = saddle_metric(u_final, target);
    } catch (const std::domain_error&) {
      s = 0.0;  // sitting on a critical submanifold
    }
    run.saddle_trace.push_back(s);
    if (!run.min_saddle || s < run.min_saddle->S) {
      run.min_saddle =
          SaddleSnapshot{s, j, s_param, ControlField{grid, samples}};
    }
  }
  if (flags.gramian) {
    ControlField field{grid, samples};
    StepDecompositions steps;
    const PropagatorTrajectory trajectory = propagate(system, field, &steps);
    const DipoleTrajectory dipole =
        dipole_in_time(trajectory, system, field, &steps);
    run.gramian_condition_trace.push_back(
        gramian(trajectory, dipole).condition);
  }
}

void take_checkpoints(OptimizationRun& run, std::vector<double>& pending,
                      double j, double s, const TimeGrid& grid,
                      const RealVector& samples) {
  for (auto it = pending.begin(); it != pending.end();) {
    if (j <= *it) {
      run.field_checkpoints.push_back({*it, j, s, ControlField{grid, samples}});
      it = pending.erase(it);
    } else {
      ++it;
    }
  }
}

// Dormand-Prince 4(5) coefficients.
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kErr[7] = {35.0 / 384 - 5179.0 / 57600,
                            0.0,
                            500.0 / 1113 - 7571.0 / 16695,
                            125.0 / 192 - 393.0 / 640,
                            -2187.0 / 6784 + 92097.0 / 339200,
                            11.0 / 84 - 187.0 / 2100,
                            -1.0 / 40};

}  // namespace

std::string to_string(RunStatus status) {
  switch (status) {
    case RunStatus::kConverged:
      return "converged";
    case RunStatus::kMaxIterations:
      return "max_iter";
    case RunStatus::kStalled:
      return "stalled";
  }
  return "unknown";
}

bool convergence_check(double J, int dim, double threshold) {
  return J <= threshold * 4.0 * dim;
}

OptimizationRun gradient_flow(const ControlSystem& system,
                              const ComplexMatrix& target,
                              const ControlField& field0,
                              const FlowConfig& config) {
  if (config.convergence_threshold <= 0.0 ||
      config.convergence_threshold >= 1.0) {
    throw std::invalid_argument(
        "gradient_flow: convergence_threshold must lie in (0, 1)");
  }
  if (config.max_iterations < 1) {
    throw std::invalid_argument("gradient_flow: max_iterations must be >= 1");
  }
  const TimeGrid& grid = field0.grid;
  const int dim = system.dim();
  const double j_max = 4.0 * dim;
  const double sqrt_dt = std::sqrt(grid.dt());
  const double lambda = config.fluence_penalty;

  OptimizationRun run;
  run.initial_field = field0;
  std::vector<double> pending = config.milestones;

  RealVector y = field0.samples;
  Eval e1 = evaluate(system, target, grid, y, lambda);
  if (!std::isfinite(e1.J)) {
    throw OptimizationError("gradient_flow: non-finite initial objective",
                            run);
  }
  run.J_trace.push_back(e1.J);
  run.final_fidelity = e1.fidelity;
  take_checkpoints(run, pending, e1.J, 0.0, grid, y);

  double s = 0.0;
  double h = config.initial_step;
  int stall_count = 0;
  run.status = RunStatus::kMaxIterations;

  if (convergence_check(e1.J, dim, config.convergence_threshold)) {
    run.status = RunStatus::kConverged;
  }

  std::vector<RealVector> k(7);
  while (run.status == RunStatus::kMaxIterations &&
         run.effort < config.max_iterations) {
    k[0] = e1.rhs;
    bool finite = true;
    for (int stage = 1; stage < 6; ++stage) {
      RealVector yi = y;
      for (int j = 0; j < stage; ++j) {
        yi += h * kA[stage][j] * k[j];
      }
      Eval ei = evaluate(system, target, grid, yi, lambda);
      if (!std::isfinite(ei.J)) {
        finite = false;
        break;
      }
      k[stage] = std::move(ei.rhs);
    }
    if (!finite) {
      run.final_field = ControlField{grid, y};
      throw OptimizationError("gradient_flow: non-finite objective in stage",
                              run);
    }
    RealVector y_new = y;
    for (int j = 0; j < 6; ++j) {
      y_new += h * kA[6][j] * k[j];
    }
    Eval e7 = evaluate(system, target, grid, y_new, lambda);
    if (!std::isfinite(e7.J)) {
      run.final_field = ControlField{grid, y};
      throw OptimizationError("gradient_flow: non-finite trial objective",
                              run);
    }
    k[6] = e7.rhs;

    double err_sq = 0.0;
    for (int i = 0; i < y.size(); ++i) {
      double e = 0.0;
      for (int j = 0; j < 7; ++j) {
        e += kErr[j] * k[j](i);
      }
      e *= h;
      const double sc = config.abs_tol +
                        config.rel_tol * std::max(std::abs(y(i)),
                                                  std::abs(y_new(i)));
      err_sq += (e / sc) * (e / sc);
    }
    const double err = std::sqrt(err_sq / y.size());
    const bool descent_ok = lambda > 0.0 || e7.J <= run.J_trace.back();

    if (err <= 1.0 && descent_ok) {
      const double step_norm = (y_new - y).norm() * sqrt_dt;
      y = std::move(y_new);
      s += h;
      ++run.effort;
      const double j_prev = run.J_trace.back();
      run.s_values.push_back(s);
      run.J_trace.push_back(e7.J);
      run.final_fidelity = e7.fidelity;
      const double prev_path =
          run.path_length_trace.empty() ? 0.0 : run.path_length_trace.back();
      run.path_length_trace.push_back(prev_path + step_norm);
      run.displacement_trace.push_back((y - field0.samples).norm() * sqrt_dt);
      take_checkpoints(run, pending, e7.J, s, grid, y);
      record_metrics(run, config.record, system, target, grid, y, e7.gradient,
                     e7.u_final, e7.J, s);

      if (std::abs(j_prev - e7.J) < 1e-14 * j_max) {
        if (++stall_count >= 50) run.status = RunStatus::kStalled;
      } else {
        stall_count = 0;
      }
      if (convergence_check(e7.J, dim, config.convergence_threshold)) {
        run.status = RunStatus::kConverged;
      }
      e1 = std::move(e7);  // first-same-as-last
      const double factor =
          err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h = std::clamp(h * std::clamp(factor, 0.2, 5.0), config.min_step,
                     config.max_step);
    } else {
      ++run.rejected_steps;
      if (h <= config.min_step) {
        run.status = RunStatus::kStalled;
        break;
      }
      double factor = 0.5;
      if (err > 1.0) {
        factor = std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.5);
      }
      h = std::max(h * factor, config.min_step);
    }
  }

  run.final_field = ControlField{grid, y};
  return run;
}

OptimizationRun pmp_iterate(const ControlSystem& system,
                            const ComplexMatrix& target,
                            const ControlField& field0,
                            const PMPConfig& config) {
  if (config.alpha < 0.0 || config.alpha > 1.0) {
    throw std::invalid_argument("pmp_iterate: alpha must lie in [0, 1]");
  }
  if (config.beta > 0.0) {
    throw std::invalid_argument("pmp_iterate: beta must be <= 0");
  }
  const TimeGrid& grid = field0.grid;
  const int dim = system.dim();
  const int n = grid.n_points;
  const double dt = grid.dt();
  const double sqrt_dt = std::sqrt(dt);
  const double alpha = config.alpha;
  const double beta =
      config.beta < 0.0
          ? config.beta
          : -0.1 / slope_bound(system, grid.T);  // N-uniform default scale

  // Real pairing between costate and propagator at the dipole:
  // -Im Tr[phi^dag mu U], which equals dJ/d eps(t) at the current state.
  const ComplexMatrix& mu = system.dipole.matrix;
  const auto bracket = [&mu](const ComplexMatrix& phi, const ComplexMatrix& u) {
    return -(phi.adjoint() * mu * u).trace().imag();
  };

  OptimizationRun run;
  run.initial_field = field0;
  std::vector<double> pending = config.milestones;

  RealVector eps = field0.samples;
  PropagatorTrajectory trajectory =
      propagate(system, ControlField{grid, eps});
  ObjectiveValue value =
      objective_value(trajectory.final_propagator(), target);
  if (!std::isfinite(value.J)) {
    throw OptimizationError("pmp_iterate: non-finite initial objective", run);
  }
  run.J_trace.push_back(value.J);
  run.final_fidelity = value.fidelity;
  take_checkpoints(run, pending, value.J, 0.0, grid, eps);
  run.status = RunStatus::kMaxIterations;
  if (convergence_check(value.J, dim, config.convergence_threshold)) {
    run.status = RunStatus::kConverged;
  }

  int stall_count = 0;
  std::vector<ComplexMatrix> phi(n + 1);
  RealVector eps_tilde(n), eps_new(n);

  while (run.status == RunStatus::kMaxIterations &&
         run.effort < config.max_iterations) {
    // Backward costate sweep with the first-stage update.
    phi[n] = kinematic_gradient(trajectory.final_propagator(), target);
    for (int j = n - 1; j >= 0; --j) {
      eps_tilde(j) = alpha * eps(j) + beta * bracket(phi[j + 1],
                                                     trajectory.U[j + 1]);
      const ComplexMatrix h = system.drift.matrix - eps_tilde(j) * mu;
      const Spectrum spec = hermitian_eigendecomposition(h);
      ComplexVector phases(dim);
      for (int i = 0; i < dim; ++i) {
        const double x = spec.eigenvalues(i) * dt;
        phases(i) = Complex(std::cos(x), std::sin(x));  // conj of forward step
      }
      phi[j] = spec.eigenvectors * phases.asDiagonal() *
               spec.eigenvectors.adjoint() * phi[j + 1];
    }

    // Forward sweep with the second-stage update.
    PropagatorTrajectory next{grid, {}};
    next.U.reserve(n + 1);
    next.U.push_back(ComplexMatrix::Identity(dim, dim));
    for (int j = 0; j < n; ++j) {
      eps_new(j) = alpha * eps_tilde(j) + beta * bracket(phi[j], next.U[j]);
      const ComplexMatrix h = system.drift.matrix - eps_new(j) * mu;
      const Spectrum spec = hermitian_eigendecomposition(h);
      ComplexVector phases(dim);
      for (int i = 0; i < dim; ++i) {
        const double x = spec.eigenvalues(i) * dt;
        phases(i) = Complex(std::cos(x), -std::sin(x));
      }
      next.U.push_back(spec.eigenvectors * phases.asDiagonal() *
                       spec.eigenvectors.adjoint() * next.U[j]);
    }

    const ObjectiveValue next_value =
        objective_value(next.final_propagator(), target);
    if (!std::isfinite(next_value.J)) {
      run.final_field = ControlField{grid, eps};
      throw OptimizationError("pmp_iterate: non-finite objective", run);
    }

    const double step_norm = (eps_new - eps).norm() * sqrt_dt;
    const double j_prev = run.J_trace.back();
    eps = eps_new;
    trajectory = std::move(next);
    value = next_value;
    ++run.effort;
    run.s_values.push_back(static_cast<double>(run.effort));
    run.J_trace.push_back(value.J);
    run.final_fidelity = value.fidelity;
    const double prev_path =
        run.path_length_trace.empty() ? 0.0 : run.path_length_trace.back();
    run.path_length_trace.push_back(prev_path + step_norm);
    run.displacement_trace.push_back((eps - field0.samples).norm() * sqrt_dt);
    take_checkpoints(run, pending, value.J, run.s_values.back(), grid, eps);
    if (config.record.slope || config.record.saddle || config.record.gramian) {
      const GradientResult gr =
          objective_gradient(system, ControlField{grid, eps}, target);
      record_metrics(run, config.record, system, target, grid, eps,
                     gr.gradient, trajectory.final_propagator(), value.J,
                     run.s_values.back());
    }

    if (std::abs(j_prev - value.J) < 1e-14 * 4.0 * dim) {
      if (++stall_count >= 50) run.status = RunStatus::kStalled;
    } else {
      stall_count = 0;
    }
    if (convergence_check(value.J, dim, config.convergence_threshold)) {
      run.status = RunStatus::kConverged;
    }
  }

  run.final_field = ControlField{grid, eps};
  return run;
}

}  // namespace qoct
