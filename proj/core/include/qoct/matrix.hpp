#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qoct {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

bool is_finite(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& a, double tol);

/// exp(scale * a) by scaling-and-squaring with a degree-13 Pade core.
/// Accurate to ~1e-13 relative for ||scale * a|| up to 1e3.
ComplexMatrix matrix_exponential(const ComplexMatrix& a, Complex scale = 1.0);

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
struct Spectrum {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;  // columns, orthonormal
};

/// Throws std::invalid_argument naming the violation magnitude when the
/// input is non-Hermitian beyond 1e-10 * ||a||.
Spectrum hermitian_eigendecomposition(const ComplexMatrix& a);

/// Row-major vectorization: element (i, j) maps to index i * N + j.
/// This convention is fixed globally; the Gramian index formula relies on it.
ComplexVector vectorize(const ComplexMatrix& a);
ComplexMatrix devectorize(const ComplexVector& v, int n);

/// Haar-distributed unitary via QR of a complex Gaussian matrix with the
/// R diagonal phase correction (Mezzadri construction).
ComplexMatrix haar_random_unitary(int n, std::uint64_t seed);

}  // namespace qoct
