#pragma once

#include "qoct/fields.hpp"
#include "qoct/matrix.hpp"
#include "qoct/objective.hpp"
#include "qoct/propagation.hpp"
#include "qoct/systems.hpp"

namespace qoct {

/// L2 norm of the functional derivative: sqrt(integral gamma^2 dt).
double slope_metric(const RealVector& gradient, const TimeGrid& grid);

/// Kinematic upper bound on the slope: 2 N sqrt(T) ||mu||_F.
double slope_bound(const ControlSystem& system, double T);

/// Trace of the second-variation kernel, integral H(t, t) dt.
double hessian_trace(const HessianKernel& kernel);

/// Rayleigh quotient of the kernel along the gradient direction:
/// (gamma^T K gamma) / (gamma^T gamma).
double local_curvature(const HessianKernel& kernel, const RealVector& gradient);

struct SignatureCensus {
  int n_positive = 0;
  int n_negative = 0;
  int n_zero = 0;
};

/// Eigenvalue census of the kernel. Eigenvalues with magnitude at most
/// zero_band times the largest magnitude count as zero.
SignatureCensus hessian_signature(const HessianKernel& kernel,
                                  double zero_band = 1e-6);

/// Census predicted at a critical point with J = 4m:
/// ((N - m)^2, m^2, 2Nm - 2m^2).
SignatureCensus expected_census(int dim, int m);

/// Normalized distance of Delta = W^dag U(T) from the nearest critical-point
/// spectrum: S = normalization * sum_i (1 - |Re E_i|) over the unit-circle
/// eigenvalues E_i, with normalization 2/J for J <= 2N and 2/(4N - J) above.
/// Throws std::domain_error at J = 0 or J = 4N where the metric is undefined.
double saddle_metric(const ComplexMatrix& u_final, const ComplexMatrix& target);

/// Path length along the checkpoints divided by the first-to-last distance.
double path_ratio(const std::vector<ControlField>& checkpoints);

/// sqrt(integral (eps_a - eps_b)^2 dt); the grids must match.
double field_distance(const ControlField& a, const ControlField& b);

/// Controllability Gramian of the endpoint map: the Hermitian PSD matrix
/// G = sum_k v_k v_k^dag dt with v_k = vec(U(T) m(t_k)).
struct GramianAnalysis {
  ComplexMatrix matrix;       // N^2 x N^2 Hermitian PSD
  RealVector singular_values; // descending
  int rank = 0;               // at threshold 1e-10 * largest singular value
  double condition = 0.0;     // largest / smallest retained singular value
};

GramianAnalysis gramian(const PropagatorTrajectory& trajectory,
                        const DipoleTrajectory& dipole);

/// Relative discrepancy between the first-order prediction of the endpoint
/// motion under d eps/ds = -gamma and a central finite difference of U(T)
/// along that direction.
double gramian_flow_check(const ControlSystem& system,
                          const ControlField& field,
                          const ComplexMatrix& target, double h = 1e-5);

/// Number of eigenvalues of a symmetric matrix exceeding
/// rel_threshold * (largest magnitude).
int numerical_rank(const RealMatrix& symmetric, double rel_threshold = 1e-8);

}  // namespace qoct
