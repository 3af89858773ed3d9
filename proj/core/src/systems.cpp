#include "qoct/systems.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qoct/lie.hpp"
#include "qoct/rng.hpp"

namespace qoct {

double DriftHamiltonian::top_transition_frequency() const {
  return level(dim() - 1) - level(0);
}

DriftHamiltonian build_rotor_drift(int n) {
  if (n < 1) throw std::invalid_argument("build_rotor_drift: N must be >= 1");
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    h(j, j) = 0.5 * j * (j + 1);
  }
  return DriftHamiltonian{h, DriftKind::kRotor};
}

DriftHamiltonian build_oscillator_drift(int n, double omega,
                                        double dissociation) {
  if (n < 1) throw std::invalid_argument("build_oscillator_drift: N >= 1");
  if (omega <= 0.0 || dissociation <= 0.0) {
    throw std::invalid_argument(
        "build_oscillator_drift: omega and D must be positive");
  }
  ComplexMatrix h = ComplexMatrix::Zero(n, n);
  double prev = -1e300;
  for (int j = 0; j < n; ++j) {
    const double x = j + 0.5;
    const double level = omega * x - (omega * omega / dissociation) * x * x;
    if (level <= prev) {
      std::ostringstream msg;
      msg << "build_oscillator_drift: spectrum folds over at level j = " << j
          << " (D too small for N = " << n << ")";
      throw std::invalid_argument(msg.str());
    }
    prev = level;
    h(j, j) = level;
  }
  return DriftHamiltonian{h, DriftKind::kOscillator};
}

DriftHamiltonian build_custom_drift(const ComplexMatrix& diag_real) {
  const int n = static_cast<int>(diag_real.rows());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j && std::abs(diag_real(i, j)) != 0.0) {
        throw std::invalid_argument("build_custom_drift: H0 must be diagonal");
      }
    }
    if (std::abs(diag_real(i, i).imag()) != 0.0) {
      throw std::invalid_argument("build_custom_drift: H0 must be real");
    }
  }
  return DriftHamiltonian{diag_real, DriftKind::kCustom};
}

namespace {

ControlHamiltonian finish_dipole(ComplexMatrix m, DipoleStructure s,
                                 double alpha, std::uint64_t seed) {
  ControlHamiltonian out;
  out.matrix = std::move(m);
  out.structure = s;
  out.alpha = alpha;
  out.seed = seed;
  return out;
}

}  // namespace

ControlHamiltonian build_dipole_D(int n, double coupling, double alpha,
                                  std::uint64_t seed) {
  if (coupling < 0.0 || coupling > 1.0) {
    throw std::invalid_argument("build_dipole_D: D must lie in [0, 1]");
  }
  if (alpha <= 0.0) throw std::invalid_argument("build_dipole_D: alpha > 0");
  RandomStream rng(seed, "dipole_signs");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = alpha;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      // |mu_{jk}| = D^{|j-k|-1}; note D^0 = 1 on the first off-diagonal.
      const double mag = std::pow(coupling, k - j - 1);
      const double v = rng.sign() * mag;
      m(j, k) = v;
      m(k, j) = v;
    }
  }
  return finish_dipole(std::move(m),
                       coupling == 1.0 ? DipoleStructure::kFlat
                                       : DipoleStructure::kD,
                       alpha, seed);
}

ControlHamiltonian build_dipole_flat(int n, double alpha, std::uint64_t seed) {
  return build_dipole_D(n, 1.0, alpha, seed);
}

ControlHamiltonian build_dipole_banded(int n, int bands, double alpha,
                                       std::uint64_t seed, bool random_signs) {
  if (bands < 1 || bands > n - 1) {
    throw std::invalid_argument("build_dipole_banded: need 1 <= bands <= N-1");
  }
  if (alpha <= 0.0) {
    throw std::invalid_argument("build_dipole_banded: alpha > 0");
  }
  RandomStream rng(seed, "dipole_signs");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = alpha;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      if (k - j <= bands) {
        const double v = random_signs ? rng.sign() : 1.0;
        m(j, k) = v;
        m(k, j) = v;
      }
    }
  }
  return finish_dipole(std::move(m), DipoleStructure::kBanded, alpha, seed);
}

ControlHamiltonian build_dipole_sparse(int n, double fraction, double alpha,
                                       std::uint64_t seed, bool random_signs) {
  if (fraction <= 0.0 || fraction > 1.0) {
    throw std::invalid_argument("build_dipole_sparse: fraction in (0, 1]");
  }
  if (alpha <= 0.0) {
    throw std::invalid_argument("build_dipole_sparse: alpha > 0");
  }
  const int total_pairs = n * (n - 1) / 2;
  const int allowed = static_cast<int>(std::lround(fraction * total_pairs));
  const DriftHamiltonian rotor = build_rotor_drift(n);

  for (int attempt = 0; attempt < 100; ++attempt) {
    RandomStream rng(seed + 7919u * attempt, "sparse_pattern");
    // Fisher-Yates over the unordered pair list.
    std::vector<std::pair<int, int>> pairs;
    pairs.reserve(total_pairs);
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) pairs.emplace_back(j, k);
    }
    for (int i = total_pairs - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.next_u64() % (i + 1));
      std::swap(pairs[i], pairs[j]);
    }
    ComplexMatrix m = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < n; ++j) m(j, j) = alpha;
    for (int i = 0; i < allowed; ++i) {
      const double v = random_signs ? rng.sign() : 1.0;
      m(pairs[i].first, pairs[i].second) = v;
      m(pairs[i].second, pairs[i].first) = v;
    }
    if (n == 1 || lie_closure(rotor.matrix, m).controllable) {
      return finish_dipole(std::move(m), DipoleStructure::kSparse, alpha,
                           seed);
    }
  }
  throw std::runtime_error(
      "build_dipole_sparse: no controllable instance in 100 resamples");
}

ControlHamiltonian build_dipole_tensor(int n_qubits, double alpha) {
  if (n_qubits < 1) {
    throw std::invalid_argument("build_dipole_tensor: n must be >= 1");
  }
  if (alpha <= 0.0) {
    throw std::invalid_argument("build_dipole_tensor: alpha > 0");
  }
  const int n = 1 << n_qubits;
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  for (int a = 0; a < n; ++a) {
    m(a, a) = alpha;
    for (int b = 0; b < n; ++b) {
      const unsigned x = static_cast<unsigned>(a ^ b);
      if (x != 0 && (x & (x - 1)) == 0) {  // single bit flip
        m(a, b) = 1.0;
      }
    }
  }
  return finish_dipole(std::move(m), DipoleStructure::kTensor, alpha, 0);
}

ControlHamiltonian build_custom_dipole(const ComplexMatrix& real_symmetric,
                                       double alpha) {
  if ((real_symmetric - real_symmetric.transpose()).norm() > 0.0 ||
      real_symmetric.imag().norm() > 0.0) {
    throw std::invalid_argument(
        "build_custom_dipole: mu must be real symmetric");
  }
  return finish_dipole(real_symmetric, DipoleStructure::kCustom, alpha, 0);
}

TargetGate build_identity_gate(int n) {
  return TargetGate{ComplexMatrix::Identity(n, n), TargetKind::kIdentity, 0};
}

TargetGate build_haar_gate(int n, std::uint64_t seed) {
  return TargetGate{haar_random_unitary(n, seed), TargetKind::kHaar, seed};
}

TargetGate build_qft_gate(int n_qubits) {
  if (n_qubits < 1) {
    throw std::invalid_argument("build_qft_gate: n must be >= 1");
  }
  const int n = 1 << n_qubits;
  const double norm = std::pow(2.0, -0.5 * n_qubits);
  ComplexMatrix w(n, n);
  for (int j = 1; j <= n; ++j) {
    for (int k = 1; k <= n; ++k) {
      const double phase = 2.0 * M_PI * j * k / n;
      w(j - 1, k - 1) = norm * Complex(std::cos(phase), std::sin(phase));
    }
  }
  return TargetGate{w, TargetKind::kQft, 0};
}

ComplexMatrix read_matrix_file(const std::string& path, bool complex_entries) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("read_matrix_file: cannot open " + path);
  }
  int n = 0;
  if (!(in >> n) || n < 1) {
    throw std::runtime_error("read_matrix_file: bad dimension line in " +
                             path);
  }
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::string tok;
      if (!(in >> tok)) {
        throw std::runtime_error("read_matrix_file: truncated file " + path);
      }
      if (complex_entries) {
        // Format re+imj, e.g. 0.5-0.25j; a bare real is accepted too.
        double re = 0.0, im = 0.0;
        std::size_t pos = 0;
        re = std::stod(tok, &pos);
        if (pos < tok.size()) {
          std::string rest = tok.substr(pos);
          if (rest.back() != 'j') {
            throw std::runtime_error("read_matrix_file: bad complex entry '" +
                                     tok + "'");
          }
          rest.pop_back();
          if (rest == "+" || rest.empty()) {
            im = 1.0;
          } else if (rest == "-") {
            im = -1.0;
          } else {
            im = std::stod(rest);
          }
        }
        m(i, j) = Complex(re, im);
      } else {
        m(i, j) = std::stod(tok);
      }
    }
  }
  return m;
}

DriftHamiltonian load_drift(const std::string& path) {
  return build_custom_drift(read_matrix_file(path, false));
}

ControlHamiltonian load_dipole(const std::string& path) {
  const ComplexMatrix m = read_matrix_file(path, false);
  const double alpha = m(0, 0).real();
  return build_custom_dipole(m, alpha);
}

TargetGate load_gate(const std::string& path) {
  ComplexMatrix w = read_matrix_file(path, true);
  if (!is_unitary(w, 1e-10 * std::sqrt(static_cast<double>(w.rows())))) {
    throw std::runtime_error("load_gate: matrix in " + path +
                             " is not unitary");
  }
  return TargetGate{std::move(w), TargetKind::kCustom, 0};
}

}  // namespace qoct
