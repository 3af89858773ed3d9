#include "qoct/propagation.hpp"

#include <stdexcept>

namespace qoct {

namespace {

void check_sizes(const ControlSystem& system, const ControlField& field) {
  if (field.size() != field.grid.n_points) {
    throw std::invalid_argument("propagate: sample count disagrees with grid");
  }
  if (!field.samples.allFinite()) {
    throw std::invalid_argument("propagate: non-finite field sample");
  }
  if (system.drift.dim() != static_cast<int>(system.dipole.matrix.rows())) {
    throw std::invalid_argument("propagate: drift/dipole dimension mismatch");
  }
}

// exp(-i * dt * H) from the eigendecomposition H = Q diag(lam) Q^dag.
ComplexMatrix step_exponential(const ComplexMatrix& q, const RealVector& lam,
                               double dt) {
  const int n = static_cast<int>(lam.size());
  ComplexVector phases(n);
  for (int i = 0; i < n; ++i) {
    phases(i) = Complex(std::cos(lam(i) * dt), -std::sin(lam(i) * dt));
  }
  return q * phases.asDiagonal() * q.adjoint();
}

}  // namespace

PropagatorTrajectory propagate(const ControlSystem& system,
                               const ControlField& field) {
  return propagate(system, field, nullptr);
}

PropagatorTrajectory propagate(const ControlSystem& system,
                               const ControlField& field,
                               StepDecompositions* steps) {
  check_sizes(system, field);
  const int n = field.grid.n_points;
  const int dim = system.dim();
  const double dt = field.grid.dt();

  PropagatorTrajectory out{field.grid, {}};
  out.U.reserve(n + 1);
  out.U.push_back(ComplexMatrix::Identity(dim, dim));
  if (steps) {
    steps->eigenvalues.clear();
    steps->eigenvectors.clear();
    steps->eigenvalues.reserve(n);
    steps->eigenvectors.reserve(n);
  }

  // Hot path: reuse the solver and workspace matrices across steps.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(dim);
  ComplexMatrix h(dim, dim), qp(dim, dim), us(dim, dim);
  ComplexVector phases(dim);
  for (int k = 0; k < n; ++k) {
    h = system.drift.matrix;
    h -= field.samples(k) * system.dipole.matrix;
    solver.compute(h);
    if (solver.info() != Eigen::Success) {
      throw std::runtime_error("propagate: eigendecomposition failed");
    }
    for (int i = 0; i < dim; ++i) {
      const double angle = solver.eigenvalues()(i) * dt;
      phases(i) = Complex(std::cos(angle), -std::sin(angle));
    }
    qp.noalias() = solver.eigenvectors() * phases.asDiagonal();
    us.noalias() = qp * solver.eigenvectors().adjoint();
    out.U.emplace_back(dim, dim);
    out.U.back().noalias() = us * out.U[k];
    if (steps) {
      steps->eigenvalues.push_back(solver.eigenvalues());
      steps->eigenvectors.push_back(solver.eigenvectors());
    }
  }
  return out;
}

DipoleTrajectory dipole_in_time(const PropagatorTrajectory& trajectory,
                                const ControlSystem& system,
                                const ControlField& field,
                                const StepDecompositions* steps) {
  const int n = trajectory.grid.n_points;
  const double half = 0.5 * trajectory.grid.dt();
  const Complex mi(0.0, -1.0);

  DipoleTrajectory out{trajectory.grid, {}};
  out.mu_t.reserve(n);
  for (int k = 0; k < n; ++k) {
    ComplexMatrix u_mid;
    if (steps) {
      u_mid = step_exponential(steps->eigenvectors[k], steps->eigenvalues[k],
                               half) *
              trajectory.U[k];
    } else {
      const ComplexMatrix h =
          system.drift.matrix - field.samples(k) * system.dipole.matrix;
      const Spectrum spec = hermitian_eigendecomposition(h);
      u_mid = step_exponential(spec.eigenvectors, spec.eigenvalues, half) *
              trajectory.U[k];
    }
    out.mu_t.push_back(mi * u_mid.adjoint() * system.dipole.matrix * u_mid);
  }
  return out;
}

ComplexMatrix dipole_at_node(const PropagatorTrajectory& trajectory,
                             const ComplexMatrix& mu, int k) {
  if (k < 0 || k >= static_cast<int>(trajectory.U.size())) {
    throw std::out_of_range("dipole_at_node: node index out of range");
  }
  const Complex mi(0.0, -1.0);
  return mi * trajectory.U[k].adjoint() * mu * trajectory.U[k];
}

}  // namespace qoct
