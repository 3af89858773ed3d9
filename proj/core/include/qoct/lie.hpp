#pragma once

#include <vector>

#include "qoct/matrix.hpp"
#include "qoct/systems.hpp"

namespace qoct {

/// Dynamical Lie algebra closure of {iH0, i mu} inside u(N).
struct LieAnalysis {
  int rank = 0;            // real dimension of the closure, <= N^2
  int depth = 0;           // bracket nesting level at saturation
  bool controllable = false;  // rank == N^2
  std::vector<int> basis_dim_by_level;  // cumulative dim after each level
};

/// Repeatedly commutes the accumulated basis with the generators,
/// orthonormalizing new directions in the real N^2-dimensional space of
/// anti-Hermitian matrices. Throws on non-Hermitian input.
LieAnalysis lie_closure(const ComplexMatrix& h0, const ComplexMatrix& mu,
                        double tol = 1e-10);

bool is_controllable(const ControlSystem& system);

}  // namespace qoct
