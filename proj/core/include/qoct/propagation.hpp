#pragma once

#include <vector>

#include "qoct/fields.hpp"
#include "qoct/matrix.hpp"
#include "qoct/systems.hpp"

namespace qoct {

/// Propagators U(t_k), k = 0..n_points, with U(t_0) = I. Each step applies
/// the exact exponential of the constant-field Hamiltonian H0 - mu * eps_k.
struct PropagatorTrajectory {
  TimeGrid grid;
  std::vector<ComplexMatrix> U;

  const ComplexMatrix& final_propagator() const { return U.back(); }
};

/// Per-step eigendecompositions of H_k = H0 - mu * eps_k, kept so that the
/// gradient can form exact derivatives of the step exponentials.
struct StepDecompositions {
  std::vector<RealVector> eigenvalues;
  std::vector<ComplexMatrix> eigenvectors;
};

/// Time-evolved dipole mu(t) = -i U^dag(t) mu U(t), sampled at the step
/// midpoints t_k + dt/2 (the representative time of sample k). Midpoint
/// sampling makes the time integrals of the landscape metrics second-order
/// and the Hessian trace identity exact on the grid.
struct DipoleTrajectory {
  TimeGrid grid;
  std::vector<ComplexMatrix> mu_t;  // n_points entries, anti-Hermitian
};

PropagatorTrajectory propagate(const ControlSystem& system,
                               const ControlField& field);

/// Same trajectory plus the per-step eigendecompositions.
PropagatorTrajectory propagate(const ControlSystem& system,
                               const ControlField& field,
                               StepDecompositions* steps);

/// Pass the step decompositions from propagate() to skip re-solving them.
DipoleTrajectory dipole_in_time(const PropagatorTrajectory& trajectory,
                                const ControlSystem& system,
                                const ControlField& field,
                                const StepDecompositions* steps = nullptr);

/// mu(t) at a propagator node t_k (k = 0..n_points); at k = 0 this is
/// exactly -i mu.
ComplexMatrix dipole_at_node(const PropagatorTrajectory& trajectory,
                             const ComplexMatrix& mu, int k);

}  // namespace qoct
