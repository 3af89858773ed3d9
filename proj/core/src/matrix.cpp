#include "qoct/matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qoct/rng.hpp"

namespace qoct {

bool is_finite(const ComplexMatrix& a) { return a.allFinite(); }

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return (a - a.adjoint()).norm() <= tol;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  const ComplexMatrix err =
      a.adjoint() * a - ComplexMatrix::Identity(a.rows(), a.cols());
  return err.norm() <= tol;
}

ComplexMatrix matrix_exponential(const ComplexMatrix& a, Complex scale) {
  if (!a.allFinite()) {
    throw std::invalid_argument("matrix_exponential: non-finite input");
  }
  const Eigen::Index n = a.rows();
  ComplexMatrix b = scale * a;

  // Degree-13 Pade approximant, valid for ||B||_1 <= theta_13.
  constexpr double kTheta13 = 5.371920351148152;
  const double norm1 = b.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm1 / kTheta13)));
    b *= std::pow(2.0, -squarings);
  }

  static const double c[14] = {
      64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
      1187353796428800.0,  129060195264000.0,   10559470521600.0,
      670442572800.0,      33522128640.0,       1323241920.0,
      40840800.0,          960960.0,            16380.0,
      182.0,               1.0};

  const ComplexMatrix ident = ComplexMatrix::Identity(n, n);
  const ComplexMatrix b2 = b * b;
  const ComplexMatrix b4 = b2 * b2;
  const ComplexMatrix b6 = b4 * b2;

  const ComplexMatrix u_inner =
      b6 * (c[13] * b6 + c[11] * b4 + c[9] * b2) +
      c[7] * b6 + c[5] * b4 + c[3] * b2 + c[1] * ident;
  const ComplexMatrix u = b * u_inner;
  const ComplexMatrix v =
      b6 * (c[12] * b6 + c[10] * b4 + c[8] * b2) +
      c[6] * b6 + c[4] * b4 + c[2] * b2 + c[0] * ident;

  ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) {
    r = r * r;
  }
  if (!r.allFinite()) {
    throw std::runtime_error("matrix_exponential: result not finite");
  }
  return r;
}

Spectrum hermitian_eigendecomposition(const ComplexMatrix& a) {
  const double scale = a.norm();
  const double dev = (a - a.adjoint()).norm();
  if (dev > 1e-10 * std::max(scale, 1e-300)) {
    std::ostringstream msg;
    msg << "hermitian_eigendecomposition: input deviates from Hermitian by "
        << dev << " (||A|| = " << scale << ")";
    throw std::invalid_argument(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigendecomposition: solver failed");
  }
  return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexVector vectorize(const ComplexMatrix& a) {
  const Eigen::Index n = a.rows(), m = a.cols();
  ComplexVector v(n * m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) {
      v(i * m + j) = a(i, j);
    }
  }
  return v;
}

ComplexMatrix devectorize(const ComplexVector& v, int n) {
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = v(i * n + j);
    }
  }
  return a;
}

ComplexMatrix haar_random_unitary(int n, std::uint64_t seed) {
  if (n < 1) {
    throw std::invalid_argument("haar_random_unitary: N must be >= 1");
  }
  RandomStream rng(seed, "haar_unitary");
  ComplexMatrix z(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      z(i, j) = Complex(rng.gaussian(), rng.gaussian());
    }
  }
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    const Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return q;
}

}  // namespace qoct
