#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "qoct/systems.hpp"

using namespace qoct;

TEST_SUITE_BEGIN("systems");

TEST_CASE("rotor drift levels are j(j+1)/2") {
  const DriftHamiltonian d = build_rotor_drift(3);
  CHECK(d.level(0) == 0.0);
  CHECK(d.level(1) == 1.0);
  CHECK(d.level(2) == 3.0);
  CHECK(build_rotor_drift(1).level(0) == 0.0);
  // Level gaps strictly increase with j.
  const DriftHamiltonian big = build_rotor_drift(8);
  for (int j = 2; j < 8; ++j) {
    CHECK(big.level(j) - big.level(j - 1) > big.level(j - 1) - big.level(j - 2));
  }
}

TEST_CASE("oscillator drift matches the anharmonic formula") {
  const DriftHamiltonian d = build_oscillator_drift(4);
  CHECK(d.level(0) == doctest::Approx(9.95).epsilon(1e-12));
  CHECK(d.level(1) == doctest::Approx(29.55).epsilon(1e-12));
  // Large dissociation recovers the harmonic ladder.
  const DriftHamiltonian h = build_oscillator_drift(4, 20.0, 1e12);
  for (int j = 0; j < 4; ++j) {
    CHECK(h.level(j) == doctest::Approx(20.0 * (j + 0.5)).epsilon(1e-9));
  }
}

TEST_CASE("oscillator drift rejects a folded spectrum") {
  // Tiny dissociation bends the ladder over within the first few levels.
  CHECK_THROWS_AS(build_oscillator_drift(8, 20.0, 10.0),
                  std::invalid_argument);
}

TEST_CASE("top transition frequency is E_N - E_1") {
  const DriftHamiltonian d = build_rotor_drift(4);
  CHECK(d.top_transition_frequency() == doctest::Approx(6.0));  // 3*4/2 - 0
}

TEST_CASE("D-structure magnitudes follow the exponent law") {
  const int n = 6;
  const double D = 0.6;
  const ControlHamiltonian mu = build_dipole_D(n, D, 1.0, 3);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) {
        CHECK(mu.matrix(j, j) == Complex(1.0, 0.0));
      } else {
        CHECK(std::abs(mu.matrix(j, k)) ==
              doctest::Approx(std::pow(D, std::abs(j - k) - 1)).epsilon(1e-14));
      }
    }
  }
  // Corner entry |mu_{1,N}| = D^{N-2}.
  CHECK(std::abs(mu.matrix(0, n - 1)) ==
        doctest::Approx(std::pow(D, n - 2)).epsilon(1e-14));
  // Exact symmetry, real entries.
  CHECK((mu.matrix - mu.matrix.transpose()).norm() == 0.0);
  CHECK(mu.matrix.imag().norm() == 0.0);
}

TEST_CASE("D=1 gives flat off-diagonal magnitudes") {
  const ControlHamiltonian mu = build_dipole_D(5, 1.0, 1.0, 7);
  for (int j = 0; j < 5; ++j) {
    for (int k = 0; k < 5; ++k) {
      if (j != k) CHECK(std::abs(mu.matrix(j, k)) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("banded structure") {
  const ControlHamiltonian tri = build_dipole_banded(6, 1, 1.0, 1);
  for (int j = 0; j < 6; ++j) {
    for (int k = 0; k < 6; ++k) {
      if (std::abs(j - k) > 1) CHECK(tri.matrix(j, k) == Complex(0.0, 0.0));
      if (std::abs(j - k) == 1) CHECK(std::abs(tri.matrix(j, k)) == 1.0);
    }
  }
  // bands = N-1 degenerates to the flat structure.
  const ControlHamiltonian full = build_dipole_banded(6, 5, 1.0, 1);
  for (int j = 0; j < 6; ++j) {
    for (int k = 0; k < 6; ++k) {
      if (j != k) CHECK(std::abs(full.matrix(j, k)) == 1.0);
    }
  }
  // Far corner vanishes whenever bands < N-1.
  CHECK(build_dipole_banded(6, 2, 1.0, 1).matrix(0, 5) == Complex(0.0, 0.0));
}

TEST_CASE("sparse structure has the exact pair count and is controllable") {
  const ControlHamiltonian mu = build_dipole_sparse(8, 0.5, 1.0, 4);
  int pairs = 0;
  for (int j = 0; j < 8; ++j) {
    for (int k = j + 1; k < 8; ++k) {
      if (mu.matrix(j, k) != Complex(0.0, 0.0)) {
        ++pairs;
        CHECK(std::abs(mu.matrix(j, k)) == 1.0);
      }
    }
  }
  CHECK(pairs == 14);  // round(0.5 * 8*7/2)
  CHECK((mu.matrix - mu.matrix.transpose()).norm() == 0.0);
  // fraction = 1 is the flat structure.
  const ControlHamiltonian full = build_dipole_sparse(4, 1.0, 1.0, 4);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      if (j != k) CHECK(std::abs(full.matrix(j, k)) == 1.0);
    }
  }
}

TEST_CASE("tensor structure is a sum of single-qubit sigma_x terms") {
  const ControlHamiltonian mu = build_dipole_tensor(3, 1.0);
  CHECK(mu.dim() == 8);
  for (int a = 0; a < 8; ++a) {
    CHECK(mu.matrix(a, a) == Complex(1.0, 0.0));
    int ones = 0;
    for (int b = 0; b < 8; ++b) {
      if (a == b) continue;
      const unsigned x = static_cast<unsigned>(a ^ b);
      const bool flip = (x & (x - 1)) == 0;
      if (flip) {
        CHECK(mu.matrix(a, b) == Complex(1.0, 0.0));
        ++ones;
      } else {
        CHECK(mu.matrix(a, b) == Complex(0.0, 0.0));
      }
    }
    CHECK(ones == 3);  // n off-diagonal ones per row
  }
  CHECK(mu.matrix(0, 7) == Complex(0.0, 0.0));  // corner zero
}

TEST_CASE("flat structure and determinism of factories") {
  const ControlHamiltonian a = build_dipole_flat(5, 1.0, 9);
  const ControlHamiltonian b = build_dipole_flat(5, 1.0, 9);
  CHECK((a.matrix - b.matrix).norm() == 0.0);
  const ControlHamiltonian c = build_dipole_flat(5, 1.0, 10);
  CHECK((a.matrix - c.matrix).norm() > 0.0);
}

TEST_CASE("every dipole family is real symmetric with diagonal alpha") {
  const double alpha = 2.5;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    for (const ControlHamiltonian& mu :
         {build_dipole_D(6, 0.9, alpha, seed),
          build_dipole_banded(6, 2, alpha, seed),
          build_dipole_sparse(6, 0.5, alpha, seed),
          build_dipole_flat(6, alpha, seed), build_dipole_tensor(2, alpha)}) {
      CHECK(mu.matrix.imag().norm() == 0.0);
      CHECK((mu.matrix - mu.matrix.transpose()).norm() == 0.0);
      for (int j = 0; j < mu.dim(); ++j) {
        CHECK(mu.matrix(j, j) == Complex(alpha, 0.0));
      }
    }
  }
}

TEST_CASE("target gates are unitary") {
  CHECK((build_identity_gate(4).matrix - ComplexMatrix::Identity(4, 4))
            .norm() == 0.0);
  for (int n : {2, 4, 8}) {
    const ComplexMatrix w = build_haar_gate(n, 3).matrix;
    CHECK((w.adjoint() * w - ComplexMatrix::Identity(n, n)).norm() < 1e-10);
  }
  for (int n : {1, 2, 3}) {
    const ComplexMatrix w = build_qft_gate(n).matrix;
    const int dim = 1 << n;
    CHECK((w.adjoint() * w - ComplexMatrix::Identity(dim, dim)).norm() <
          1e-12);
    for (int j = 0; j < dim; ++j) {
      for (int k = 0; k < dim; ++k) {
        CHECK(std::abs(w(j, k)) ==
              doctest::Approx(1.0 / std::sqrt(double(dim))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("single-qubit Fourier gate closed form") {
  // W(j,k) = 2^{-1/2} exp(pi i j k), j,k = 1..2.
  const ComplexMatrix w = build_qft_gate(1).matrix;
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(w(0, 0) - Complex(-r, 0.0)) < 1e-14);
  CHECK(std::abs(w(0, 1) - Complex(r, 0.0)) < 1e-14);
  CHECK(std::abs(w(1, 0) - Complex(r, 0.0)) < 1e-14);
  CHECK(std::abs(w(1, 1) - Complex(r, 0.0)) < 1e-14);
}

TEST_CASE("matrix files round-trip custom systems") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qoct_test_systems";
  fs::create_directories(dir);

  const fs::path drift_path = dir / "drift.txt";
  {
    std::ofstream out(drift_path);
    out << "3\n0 0 0\n0 1.5 0\n0 0 4\n";
  }
  const DriftHamiltonian d = load_drift(drift_path.string());
  CHECK(d.level(1) == 1.5);
  CHECK(d.level(2) == 4.0);

  const fs::path mu_path = dir / "mu.txt";
  {
    std::ofstream out(mu_path);
    out << "2\n1 -1\n-1 1\n";
  }
  const ControlHamiltonian mu = load_dipole(mu_path.string());
  CHECK(mu.matrix(0, 1) == Complex(-1.0, 0.0));

  const fs::path gate_path = dir / "w.txt";
  {
    std::ofstream out(gate_path);
    out << "2\n0+1j 0+0j\n0+0j 0-1j\n";
  }
  const TargetGate w = load_gate(gate_path.string());
  CHECK(std::abs(w.matrix(0, 0) - Complex(0.0, 1.0)) < 1e-14);
  CHECK(std::abs(w.matrix(1, 1) - Complex(0.0, -1.0)) < 1e-14);

  CHECK_THROWS(load_drift((dir / "missing.txt").string()));
  fs::remove_all(dir);
}

TEST_SUITE_END();
