#include <doctest.h>

#include <cmath>

#include "qoct/matrix.hpp"
#include "qoct/rng.hpp"

using namespace qoct;

namespace {

ComplexMatrix random_hermitian(int n, std::uint64_t seed) {
  RandomStream s(seed, "test-herm");
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      a(i, j) = Complex(s.gaussian(), s.gaussian());
    }
  }
  return 0.5 * (a + a.adjoint().eval());
}

}  // namespace

TEST_SUITE_BEGIN("matrix");

TEST_CASE("matrix_exponential of zero is the identity") {
  const ComplexMatrix z = ComplexMatrix::Zero(3, 3);
  CHECK((matrix_exponential(z) - ComplexMatrix::Identity(3, 3)).norm() ==
        doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("matrix_exponential matches the diagonal closed form") {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = -2.0;
  d(2, 2) = Complex(0.0, 3.0);
  const ComplexMatrix e = matrix_exponential(d);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(e(i, i) - std::exp(d(i, i))) < 1e-13);
  }
}

TEST_CASE("matrix_exponential of -i*H*t is unitary and matches eig form") {
  const ComplexMatrix h = random_hermitian(5, 4);
  const ComplexMatrix u = matrix_exponential(h, Complex(0.0, -2.0));
  CHECK(is_unitary(u, 1e-12));
  const Spectrum spec = hermitian_eigendecomposition(h);
  ComplexMatrix ref = ComplexMatrix::Zero(5, 5);
  for (int i = 0; i < 5; ++i) {
    ref += std::exp(Complex(0.0, -2.0) * spec.eigenvalues(i)) *
           spec.eigenvectors.col(i) * spec.eigenvectors.col(i).adjoint();
  }
  CHECK((u - ref).norm() < 1e-12);
}

TEST_CASE("exponential addition law on commuting arguments") {
  const ComplexMatrix h = random_hermitian(4, 9);
  const ComplexMatrix a = matrix_exponential(h, Complex(0.0, -0.3));
  const ComplexMatrix b = matrix_exponential(h, Complex(0.0, -0.7));
  const ComplexMatrix c = matrix_exponential(h, Complex(0.0, -1.0));
  CHECK((a * b - c).norm() < 1e-12);
}

TEST_CASE("hermitian_eigendecomposition reconstructs and sorts") {
  const ComplexMatrix h = random_hermitian(6, 2);
  const Spectrum spec = hermitian_eigendecomposition(h);
  ComplexMatrix rec = spec.eigenvectors *
                      spec.eigenvalues.asDiagonal().toDenseMatrix().cast<Complex>() *
                      spec.eigenvectors.adjoint();
  CHECK((rec - h).norm() < 1e-12);
  for (int i = 1; i < 6; ++i) {
    CHECK(spec.eigenvalues(i) >= spec.eigenvalues(i - 1));
  }
  CHECK(is_unitary(spec.eigenvectors, 1e-12));
}

TEST_CASE("hermitian_eigendecomposition rejects non-Hermitian input") {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = 1.0;  // strictly upper triangular
  CHECK_THROWS_AS(hermitian_eigendecomposition(a), std::invalid_argument);
}

TEST_CASE("vectorize is row-major and devectorize inverts it") {
  ComplexMatrix a(2, 2);
  a << Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0);
  const ComplexVector v = vectorize(a);
  CHECK(v(0) == Complex(1, 0));
  CHECK(v(1) == Complex(2, 0));  // element (0,1) -> index 0*N+1
  CHECK(v(2) == Complex(3, 0));
  CHECK(v(3) == Complex(4, 0));
  CHECK((devectorize(v, 2) - a).norm() == 0.0);
}

TEST_CASE("haar_random_unitary is unitary and deterministic") {
  for (int n : {2, 4, 8}) {
    const ComplexMatrix u = haar_random_unitary(n, 5);
    CHECK(is_unitary(u, 1e-10));
    CHECK((u - haar_random_unitary(n, 5)).norm() == 0.0);
    CHECK((u - haar_random_unitary(n, 6)).norm() > 1e-3);
  }
}

TEST_CASE("haar_random_unitary covers the group (trace statistics)") {
  // For Haar measure on U(N), E|Tr U|^2 = 1.
  double acc = 0.0;
  const int reps = 400;
  for (int s = 0; s < reps; ++s) {
    acc += std::norm(haar_random_unitary(4, 1000 + s).trace());
  }
  CHECK(acc / reps == doctest::Approx(1.0).epsilon(0.25));
}

TEST_CASE("predicate helpers") {
  const ComplexMatrix h = random_hermitian(3, 1);
  CHECK(is_hermitian(h, 1e-12));
  CHECK(is_finite(h));
  ComplexMatrix bad = h;
  bad(0, 0) = std::numeric_limits<double>::quiet_NaN();
  CHECK(!is_finite(bad));
}

TEST_SUITE_END();
