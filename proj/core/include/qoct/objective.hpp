#pragma once

#include "qoct/fields.hpp"
#include "qoct/matrix.hpp"
#include "qoct/propagation.hpp"
#include "qoct/systems.hpp"

namespace qoct {

/// J = 2N - 2 Re Tr[W^dag U(T)], in [0, 4N]; fidelity = Re Tr[W^dag U(T)]/N.
struct ObjectiveValue {
  double J = 0.0;
  double fidelity = 0.0;
};

ObjectiveValue objective_value(const ComplexMatrix& u_final,
                               const ComplexMatrix& target);

ObjectiveValue objective_value(const ControlSystem& system,
                               const ControlField& field,
                               const ComplexMatrix& target);

struct GradientResult {
  ObjectiveValue value;
  /// Functional derivative delta J / delta eps at each sample: the exact
  /// derivative of the discrete J with respect to sample k, divided by dt.
  RealVector gradient;
  PropagatorTrajectory trajectory;
};

/// Exact gradient of the discrete objective. Each step's derivative is the
/// Frechet derivative of its matrix exponential, formed in the step
/// eigenbasis with the divided-difference phase factors; contributions are
/// accumulated in a single backward sweep.
GradientResult objective_gradient(const ControlSystem& system,
                                  const ControlField& field,
                                  const ComplexMatrix& target);

/// Gradient of the trace fidelity on the unitary group at U:
/// grad F = U W^dag U - W.
ComplexMatrix kinematic_gradient(const ComplexMatrix& u, const ComplexMatrix& w);

/// Discretized second-variation kernel: matrix(k, l) = H(t_k, t_l) * dt with
/// H(t, t') = 2 Re Tr[W^dag U(T) m(t_max) m(t_min)], m(t) = U^dag(t) mu U(t),
/// evaluated at the sample midpoints. Real symmetric n_points x n_points.
struct HessianKernel {
  TimeGrid grid;
  RealMatrix matrix;
};

HessianKernel hessian_kernel(const ControlSystem& system,
                             const ControlField& field,
                             const ComplexMatrix& target);

/// Reuses an existing trajectory and dipole trajectory for the same field.
HessianKernel hessian_kernel(const PropagatorTrajectory& trajectory,
                             const DipoleTrajectory& dipole,
                             const ComplexMatrix& target);

}  // namespace qoct
