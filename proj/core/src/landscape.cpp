#include "qoct/landscape.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace qoct {

double slope_metric(const RealVector& gradient, const TimeGrid& grid) {
  return gradient.norm() * std::sqrt(grid.dt());
}

double slope_bound(const ControlSystem& system, double T) {
  return 2.0 * system.dim() * std::sqrt(T) * system.dipole.matrix.norm();
}

double hessian_trace(const HessianKernel& kernel) {
  return kernel.matrix.trace();
}

double local_curvature(const HessianKernel& kernel,
                       const RealVector& gradient) {
  const double denom = gradient.squaredNorm();
  if (denom <= 0.0) {
    throw std::invalid_argument("local_curvature: zero gradient");
  }
  return gradient.dot(kernel.matrix * gradient) / denom;
}

SignatureCensus hessian_signature(const HessianKernel& kernel,
                                  double zero_band) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(kernel.matrix,
                                                   Eigen::EigenvaluesOnly);
  const RealVector& ev = solver.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  const double band = zero_band * scale;
  SignatureCensus census;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) <= band) {
      ++census.n_zero;
    } else if (ev(i) > 0.0) {
      ++census.n_positive;
    } else {
      ++census.n_negative;
    }
  }
  return census;
}

SignatureCensus expected_census(int dim, int m) {
  if (m < 0 || m > dim) {
    throw std::invalid_argument("expected_census: m must lie in [0, N]");
  }
  SignatureCensus census;
  census.n_positive = (dim - m) * (dim - m);
  census.n_negative = m * m;
  census.n_zero = 2 * dim * m - 2 * m * m;
  return census;
}

double saddle_metric(const ComplexMatrix& u_final,
                     const ComplexMatrix& target) {
  const int n = static_cast<int>(u_final.rows());
  const ComplexMatrix delta = target.adjoint() * u_final;
  const double j = 2.0 * n - 2.0 * delta.trace().real();

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(delta, false);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += 1.0 - std::abs(solver.eigenvalues()(i).real());
  }
  const double denom = j <= 2.0 * n ? j : 4.0 * n - j;
  if (denom < 1e-12) {
    throw std::domain_error("saddle_metric: undefined at a critical endpoint");
  }
  return 2.0 * sum / denom;
}

double path_ratio(const std::vector<ControlField>& checkpoints) {
  if (checkpoints.size() < 2) {
    throw std::invalid_argument("path_ratio: need at least two checkpoints");
  }
  double length = 0.0;
  for (std::size_t i = 1; i < checkpoints.size(); ++i) {
    length += field_distance(checkpoints[i], checkpoints[i - 1]);
  }
  const double displacement =
      field_distance(checkpoints.back(), checkpoints.front());
  if (displacement <= 0.0) {
    throw std::invalid_argument("path_ratio: zero net displacement");
  }
  return length / displacement;
}

double field_distance(const ControlField& a, const ControlField& b) {
  if (a.size() != b.size() || a.grid.T != b.grid.T) {
    throw std::invalid_argument("field_distance: grids differ");
  }
  return (a.samples - b.samples).norm() * std::sqrt(a.grid.dt());
}

GramianAnalysis gramian(const PropagatorTrajectory& trajectory,
                        const DipoleTrajectory& dipole) {
  const int n = trajectory.grid.n_points;
  const int dim = static_cast<int>(trajectory.final_propagator().rows());
  const int d2 = dim * dim;
  const double dt = trajectory.grid.dt();
  const Complex iu(0.0, 1.0);
  const ComplexMatrix& u_final = trajectory.final_propagator();

  ComplexMatrix rows(n, d2);
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix v = u_final * (iu * dipole.mu_t[k]);
    rows.row(k) = Eigen::Map<const ComplexVector>(v.data(), d2);
  }

  GramianAnalysis out;
  out.matrix = rows.adjoint() * rows * dt;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(out.matrix,
                                                      Eigen::EigenvaluesOnly);
  out.singular_values =
      solver.eigenvalues().cwiseAbs().reverse();  // PSD: eigen == singular
  const double top = out.singular_values(0);
  const double threshold = 1e-10 * top;
  double smallest = top;
  for (int i = 0; i < d2; ++i) {
    if (out.singular_values(i) > threshold) {
      ++out.rank;
      smallest = out.singular_values(i);
    }
  }
  out.condition = smallest > 0.0 ? top / smallest : 0.0;
  return out;
}

double gramian_flow_check(const ControlSystem& system,
                          const ControlField& field,
                          const ComplexMatrix& target, double h) {
  const GradientResult grad = objective_gradient(system, field, target);
  const RealVector direction = -grad.gradient;
  const double dt = field.grid.dt();

  StepDecompositions steps;
  const PropagatorTrajectory trajectory = propagate(system, field, &steps);
  const DipoleTrajectory dipole =
      dipole_in_time(trajectory, system, field, &steps);
  const int dim = system.dim();
  ComplexMatrix predicted = ComplexMatrix::Zero(dim, dim);
  // delta U(T) = i U(T) m(t_k) delta_eps dt with m = i mu_t, so each sample
  // contributes -U(T) mu_t[k] per unit field change.
  for (int k = 0; k < field.size(); ++k) {
    predicted -= direction(k) * dt * dipole.mu_t[k];
  }
  predicted = trajectory.final_propagator() * predicted;

  ControlField plus = field, minus = field;
  plus.samples += h * direction;
  minus.samples -= h * direction;
  const ComplexMatrix fd = (propagate(system, plus).final_propagator() -
                            propagate(system, minus).final_propagator()) /
                           (2.0 * h);
  const double scale = std::max(predicted.norm(), 1e-300);
  return (fd - predicted).norm() / scale;
}

int numerical_rank(const RealMatrix& symmetric, double rel_threshold) {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(symmetric,
                                                   Eigen::EigenvaluesOnly);
  const RealVector ev = solver.eigenvalues().cwiseAbs();
  const double threshold = rel_threshold * ev.maxCoeff();
  int rank = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) > threshold) ++rank;
  }
  return rank;
}

}  // namespace qoct
