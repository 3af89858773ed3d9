#include <doctest.h>

#include "qoct/lie.hpp"
#include "qoct/matrix.hpp"
#include "qoct/systems.hpp"

using namespace qoct;

TEST_SUITE_BEGIN("lie");

TEST_CASE("commuting generators close at rank 2") {
  ComplexMatrix h0 = ComplexMatrix::Zero(3, 3);
  h0.diagonal() << 0.0, 1.0, 3.0;
  ComplexMatrix mu = ComplexMatrix::Zero(3, 3);
  mu.diagonal() << 1.0, 2.0, 5.0;  // diagonal: commutes with h0
  const LieAnalysis a = lie_closure(h0, mu);
  CHECK(a.rank == 2);
  CHECK(!a.controllable);
}

TEST_CASE("proportional generators close at rank 1") {
  ComplexMatrix h0 = ComplexMatrix::Zero(2, 2);
  h0.diagonal() << 0.0, 1.0;
  const LieAnalysis a = lie_closure(h0, (2.0 * h0).eval());
  CHECK(a.rank == 1);
}

TEST_CASE("rotor with flat dipole is controllable at N=2") {
  const DriftHamiltonian h0 = build_rotor_drift(2);
  const ControlHamiltonian mu = build_dipole_flat(2, 1.0, 3);
  const LieAnalysis a = lie_closure(h0.matrix, mu.matrix);
  CHECK(a.rank == 4);
  CHECK(a.controllable);
  CHECK(a.depth >= 1);
  // Level dimensions are non-decreasing and end at the rank.
  for (size_t i = 1; i < a.basis_dim_by_level.size(); ++i) {
    CHECK(a.basis_dim_by_level[i] >= a.basis_dim_by_level[i - 1]);
  }
  CHECK(a.basis_dim_by_level.back() == a.rank);
}

TEST_CASE("rank never exceeds the ambient dimension") {
  for (int n : {2, 4, 8}) {
    const LieAnalysis a = lie_closure(build_rotor_drift(n).matrix,
                                      build_dipole_flat(n, 1.0, 5).matrix);
    CHECK(a.rank <= n * n);
  }
}

TEST_CASE("is_controllable on degenerate dipoles") {
  const DriftHamiltonian h0 = build_rotor_drift(3);
  ControlSystem zero{h0, build_custom_dipole(ComplexMatrix::Zero(3, 3), 1.0)};
  zero.dipole.matrix.setZero();
  CHECK(!is_controllable(zero));
  ControlSystem center{h0,
                       build_custom_dipole(ComplexMatrix::Identity(3, 3), 1.0)};
  CHECK(!is_controllable(center));
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  CHECK_THROWS(lie_closure(bad, ComplexMatrix::Identity(2, 2)));
}

TEST_CASE("rank is invariant under simultaneous unitary conjugation") {
  const ComplexMatrix h0 = build_rotor_drift(4).matrix;
  const ComplexMatrix mu = build_dipole_D(4, 0.9, 1.0, 2).matrix;
  const int base_rank = lie_closure(h0, mu).rank;
  for (int s = 0; s < 10; ++s) {
    const ComplexMatrix q = haar_random_unitary(4, 700 + s);
    const ComplexMatrix h0c = q * h0 * q.adjoint();
    const ComplexMatrix muc = q * mu * q.adjoint();
    CHECK(lie_closure(h0c, muc).rank == base_rank);
  }
}

TEST_CASE("banded coupling needs at least the flat nesting depth") {
  const ComplexMatrix h0 = build_rotor_drift(8).matrix;
  const int depth_flat =
      lie_closure(h0, build_dipole_flat(8, 1.0, 3).matrix).depth;
  const int depth_banded =
      lie_closure(h0, build_dipole_banded(8, 1, 1.0, 3).matrix).depth;
  CHECK(depth_flat <= depth_banded);
}

TEST_SUITE_END();
