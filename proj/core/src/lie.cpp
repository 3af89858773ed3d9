#include "qoct/lie.hpp"

#include <cmath>
#include <stdexcept>

namespace qoct {

namespace {

// Real coordinates of an anti-Hermitian matrix: N diagonal imaginary parts
// followed by (re, im) of the strict upper triangle. Euclidean norm of the
// coordinates differs from the Frobenius norm by factors of sqrt(2) on the
// off-diagonal, which does not affect span or rank decisions.
RealVector coords(const ComplexMatrix& a) {
  const int n = static_cast<int>(a.rows());
  RealVector v(n * n);
  int idx = 0;
  for (int i = 0; i < n; ++i) v(idx++) = a(i, i).imag();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      v(idx++) = a(i, j).real();
      v(idx++) = a(i, j).imag();
    }
  }
  return v;
}

// Modified Gram-Schmidt with one re-orthogonalization pass. Returns true
// and appends the normalized residual if the candidate adds a direction.
bool try_add_direction(std::vector<RealVector>& basis, RealVector v,
                       double tol) {
  const double initial = v.norm();
  if (initial <= tol) return false;
  for (int pass = 0; pass < 2; ++pass) {
    for (const RealVector& b : basis) {
      v -= b.dot(v) * b;
    }
  }
  if (v.norm() <= tol * initial) return false;
  v.normalize();
  basis.push_back(std::move(v));
  return true;
}

}  // namespace

LieAnalysis lie_closure(const ComplexMatrix& h0, const ComplexMatrix& mu,
                        double tol) {
  const double scale = std::max({h0.norm(), mu.norm(), 1.0});
  if (!is_hermitian(h0, 1e-10 * scale) || !is_hermitian(mu, 1e-10 * scale)) {
    throw std::invalid_argument("lie_closure: generators must be Hermitian");
  }
  const int n = static_cast<int>(h0.rows());
  const int full = n * n;
  const Complex im_unit(0.0, 1.0);

  const std::vector<ComplexMatrix> generators = {im_unit * h0, im_unit * mu};

  std::vector<RealVector> basis;
  std::vector<ComplexMatrix> elements;  // matrices matching accepted directions
  LieAnalysis out;

  std::vector<ComplexMatrix> fresh;
  for (const ComplexMatrix& g : generators) {
    const double norm = g.norm();
    if (norm <= tol) continue;
    const ComplexMatrix gn = g / norm;
    if (try_add_direction(basis, coords(gn), tol)) {
      elements.push_back(gn);
      fresh.push_back(gn);
      out.depth = 1;
    }
  }
  out.basis_dim_by_level.push_back(static_cast<int>(basis.size()));

  int level = 1;
  while (!fresh.empty() && static_cast<int>(basis.size()) < full) {
    ++level;
    std::vector<ComplexMatrix> added;
    for (const ComplexMatrix& g : generators) {
      for (const ComplexMatrix& b : fresh) {
        ComplexMatrix c = g * b - b * g;
        const double norm = c.norm();
        if (norm <= tol) continue;
        c /= norm;
        if (try_add_direction(basis, coords(c), tol)) {
          elements.push_back(c);
          added.push_back(std::move(c));
          out.depth = level;
          if (static_cast<int>(basis.size()) == full) break;
        }
      }
      if (static_cast<int>(basis.size()) == full) break;
    }
    out.basis_dim_by_level.push_back(static_cast<int>(basis.size()));
    fresh = std::move(added);
  }

  out.rank = static_cast<int>(basis.size());
  out.controllable = (out.rank == full);
  return out;
}

bool is_controllable(const ControlSystem& system) {
  return lie_closure(system.drift.matrix, system.dipole.matrix).controllable;
}

}  // namespace qoct
