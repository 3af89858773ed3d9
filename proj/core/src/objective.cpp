#include "qoct/objective.hpp"

#include <cmath>
#include <stdexcept>

namespace qoct {

namespace {

double sinc(double y) {
  if (std::abs(y) < 1e-4) {
    const double y2 = y * y;
    return 1.0 - y2 / 6.0 * (1.0 - y2 / 20.0);
  }
  return std::sin(y) / y;
}

void check_target(const ComplexMatrix& target, int dim) {
  if (target.rows() != dim || target.cols() != dim) {
    throw std::invalid_argument("objective: target dimension mismatch");
  }
}

}  // namespace

ObjectiveValue objective_value(const ComplexMatrix& u_final,
                               const ComplexMatrix& target) {
  check_target(target, static_cast<int>(u_final.rows()));
  const int n = static_cast<int>(u_final.rows());
  const double overlap =
      (target.adjoint() * u_final).trace().real();
  return {2.0 * n - 2.0 * overlap, overlap / n};
}

ObjectiveValue objective_value(const ControlSystem& system,
                               const ControlField& field,
                               const ComplexMatrix& target) {
  return objective_value(propagate(system, field).final_propagator(), target);
}

GradientResult objective_gradient(const ControlSystem& system,
                                  const ControlField& field,
                                  const ComplexMatrix& target) {
  check_target(target, system.dim());
  StepDecompositions steps;
  GradientResult out;
  out.trajectory = propagate(system, field, &steps);
  out.value = objective_value(out.trajectory.final_propagator(), target);

  const int n = field.grid.n_points;
  const int dim = system.dim();
  const double dt = field.grid.dt();
  const Complex iu(0.0, 1.0);

  // D = W^dag U(T); the derivative of step k enters as
  // dJ/deps_k = -2 Re Tr[D U(t_{k+1})^dag F_k U(t_k)], with F_k the
  // derivative of exp(-i H_k dt) along +i mu dt. In the step eigenbasis
  // F_k = Q (V . Phi) Q^dag, V = Q^dag (i mu dt) Q, and Phi the divided
  // differences of the eigenphases, which reduce to a phase times a sinc.
  const ComplexMatrix d = target.adjoint() * out.trajectory.final_propagator();
  out.gradient = RealVector::Zero(n);

  // Because U(t_{k+1})^dag Q = (Q^dag U(t_k))^dag diag(e^{+i lam dt}), the
  // whole step reduces to A = X D X^dag with X = Q^dag U(t_k), and the
  // extra eigenphase folds into Phi, which becomes e^{+iy} sinc(y) with
  // y = (lam_b - lam_a) dt / 2.
  const ComplexMatrix i_mu_dt = iu * dt * system.dipole.matrix;
  ComplexMatrix x(dim, dim), xd(dim, dim), a(dim, dim), qm(dim, dim),
      v(dim, dim);
  ComplexVector half_phase(dim);  // e^{+i lam dt / 2}
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix& q = steps.eigenvectors[k];
    const RealVector& lam = steps.eigenvalues[k];
    x.noalias() = q.adjoint() * out.trajectory.U[k];
    xd.noalias() = x * d;
    a.noalias() = xd * x.adjoint();
    qm.noalias() = q.adjoint() * i_mu_dt;
    v.noalias() = qm * q;
    for (int i = 0; i < dim; ++i) {
      const double angle = 0.5 * lam(i) * dt;
      half_phase(i) = Complex(std::cos(angle), std::sin(angle));
    }

    Complex trace(0.0, 0.0);
    for (int b = 0; b < dim; ++b) {
      for (int a_idx = 0; a_idx < dim; ++a_idx) {
        const double y = 0.5 * (lam(b) - lam(a_idx)) * dt;
        const Complex phi =
            half_phase(b) * std::conj(half_phase(a_idx)) * sinc(y);
        trace += a(a_idx, b) * v(b, a_idx) * phi;
      }
    }
    out.gradient(k) = -2.0 * trace.real() / dt;
  }
  return out;
}

ComplexMatrix kinematic_gradient(const ComplexMatrix& u,
                                 const ComplexMatrix& w) {
  check_target(w, static_cast<int>(u.rows()));
  return u * w.adjoint() * u - w;
}

HessianKernel hessian_kernel(const ControlSystem& system,
                             const ControlField& field,
                             const ComplexMatrix& target) {
  StepDecompositions steps;
  const PropagatorTrajectory trajectory = propagate(system, field, &steps);
  const DipoleTrajectory dipole = dipole_in_time(trajectory, system, field, &steps);
  return hessian_kernel(trajectory, dipole, target);
}

HessianKernel hessian_kernel(const PropagatorTrajectory& trajectory,
                             const DipoleTrajectory& dipole,
                             const ComplexMatrix& target) {
  const int n = trajectory.grid.n_points;
  const int dim = static_cast<int>(target.rows());
  check_target(target, dim);
  const double dt = trajectory.grid.dt();
  const Complex iu(0.0, 1.0);
  const ComplexMatrix delta = target.adjoint() * trajectory.final_propagator();

  // Row k of M holds vec(m_k) with m_k = U^dag mu U Hermitian; row k of P
  // holds vec(Delta m_k). Since m is Hermitian, Tr[P m] equals the
  // Hermitian inner product of the flattened matrices, so all the pair
  // traces come from one product G = P M^H.
  ComplexMatrix m_rows(n, dim * dim);
  ComplexMatrix p_rows(n, dim * dim);
  for (int k = 0; k < n; ++k) {
    const ComplexMatrix m = iu * dipole.mu_t[k];
    const ComplexMatrix p = delta * m;
    m_rows.row(k) = Eigen::Map<const ComplexVector>(m.data(), dim * dim);
    p_rows.row(k) = Eigen::Map<const ComplexVector>(p.data(), dim * dim);
  }
  const ComplexMatrix g = p_rows * m_rows.adjoint();

  HessianKernel out{trajectory.grid, RealMatrix(n, n)};
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l <= k; ++l) {
      const double value = 2.0 * g(k, l).real() * dt;
      out.matrix(k, l) = value;
      out.matrix(l, k) = value;
    }
  }
  return out;
}

}  // namespace qoct
