#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qoct/matrix.hpp"

namespace qoct {

enum class DriftKind { kRotor, kOscillator, kCustom };

/// Field-free Hamiltonian H0, diagonal and real in the working basis.
struct DriftHamiltonian {
  ComplexMatrix matrix;
  DriftKind kind = DriftKind::kCustom;

  int dim() const { return static_cast<int>(matrix.rows()); }
  double level(int j) const { return matrix(j, j).real(); }
  /// |1> -> |N> transition frequency, E_{N-1} - E_0.
  double top_transition_frequency() const;
};

enum class DipoleStructure { kD, kBanded, kSparse, kTensor, kFlat, kCustom };

/// Control (dipole) Hamiltonian mu: real, symmetric, constant positive
/// diagonal alpha.
struct ControlHamiltonian {
  ComplexMatrix matrix;
  DipoleStructure structure = DipoleStructure::kCustom;
  double alpha = 1.0;
  std::uint64_t seed = 0;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

struct ControlSystem {
  DriftHamiltonian drift;
  ControlHamiltonian dipole;

  int dim() const { return drift.dim(); }
};

enum class TargetKind { kIdentity, kHaar, kQft, kCustom };

struct TargetGate {
  ComplexMatrix matrix;
  TargetKind kind = TargetKind::kCustom;
  std::uint64_t seed = 0;

  int dim() const { return static_cast<int>(matrix.rows()); }
};

/// Rigid rotor: levels j(j+1)/2 for j = 0..N-1.
DriftHamiltonian build_rotor_drift(int n);

/// Anharmonic oscillator: levels w(j+1/2) - (w^2/d)(j+1/2)^2.
/// Throws if the levels fold over (stop being monotone) within 0..N-1.
DriftHamiltonian build_oscillator_drift(int n, double omega = 20.0,
                                        double dissociation = 2000.0);

DriftHamiltonian build_custom_drift(const ComplexMatrix& diag_real);

/// Coupling decays as D^{|j-k|-1} off the diagonal, random +-1 signs.
ControlHamiltonian build_dipole_D(int n, double coupling, double alpha,
                                  std::uint64_t seed);

/// +-1 within `bands` super/sub-diagonals, zero beyond.
/// `random_signs = false` gives the all +1 variant.
ControlHamiltonian build_dipole_banded(int n, int bands, double alpha,
                                       std::uint64_t seed = 0,
                                       bool random_signs = true);

/// Exactly round(fraction * N(N-1)/2) off-diagonal pairs set to +-1.
/// Resamples (up to 100 attempts) until the pattern is controllable when
/// paired with the rotor drift; throws if no controllable instance found.
ControlHamiltonian build_dipole_sparse(int n, double fraction, double alpha,
                                       std::uint64_t seed,
                                       bool random_signs = true);

/// Sum of single-qubit sigma_x terms plus alpha * I on N = 2^n levels.
ControlHamiltonian build_dipole_tensor(int n_qubits, double alpha);

/// All off-diagonal magnitudes 1 (the D = 1 structure).
ControlHamiltonian build_dipole_flat(int n, double alpha, std::uint64_t seed);

ControlHamiltonian build_custom_dipole(const ComplexMatrix& real_symmetric,
                                       double alpha);

TargetGate build_identity_gate(int n);
TargetGate build_haar_gate(int n, std::uint64_t seed);

/// Fourier transform gate on n qubits, W(j,k) = 2^{-n/2} exp(2 pi i j k / N)
/// with j, k = 1..N (unitary normalization).
TargetGate build_qft_gate(int n_qubits);

/// Plain-text matrix file: first line N, then N rows of N entries.
/// Entries are real for Hamiltonians, `re+imj` complex for gates.
ComplexMatrix read_matrix_file(const std::string& path, bool complex_entries);

DriftHamiltonian load_drift(const std::string& path);
ControlHamiltonian load_dipole(const std::string& path);
TargetGate load_gate(const std::string& path);

}  // namespace qoct
