#include "qoct/fields.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qoct/rng.hpp"

namespace qoct {

TimeGrid default_grid(const ControlSystem& system, std::optional<double> T) {
  const double horizon = T.value_or(14.0);
  const int n = system.dim();
  int points = 512;
  if (horizon > 14.0) {
    points = 4096;
  } else if (system.drift.kind == DriftKind::kOscillator) {
    points = n <= 8 ? 512 : (n <= 16 ? 1024 : 2048);
  } else {
    points = n <= 8 ? 512 : (n <= 16 ? 2048 : 4096);
  }
  TimeGrid grid{horizon, points};
  // Nyquist guard; double the resolution until the top transition resolves.
  const double omega = system.drift.top_transition_frequency();
  while (grid.dt() * omega > M_PI && grid.n_points < (1 << 22)) {
    grid.n_points *= 2;
  }
  validate_grid(grid, system);
  return grid;
}

void validate_grid(const TimeGrid& grid, const ControlSystem& system) {
  if (grid.n_points < 2) {
    throw std::invalid_argument("TimeGrid: n_points must be >= 2");
  }
  const double omega = system.drift.top_transition_frequency();
  if (grid.dt() * omega > M_PI) {
    std::ostringstream msg;
    msg << "TimeGrid: dt * omega_1N = " << grid.dt() * omega
        << " exceeds pi; increase n_points to at least "
        << static_cast<int>(std::ceil(grid.T * omega / M_PI));
    throw std::invalid_argument(msg.str());
  }
}

double field_envelope(double t, double T) {
  const double x = t - 0.5 * T;
  return std::exp(-(8.0 * M_PI / (T * T)) * x * x);
}

ControlField initial_field(const TimeGrid& grid, int K, double f,
                           std::uint64_t seed, const ControlSystem& system,
                           FrequencySpacing spacing) {
  if (K < 1) throw std::invalid_argument("initial_field: K must be >= 1");
  if (f <= 0.0) throw std::invalid_argument("initial_field: f must be > 0");

  const double omega_max = system.drift.top_transition_frequency();
  RandomStream freq_rng(seed, "field_frequencies");
  RandomStream phase_rng(seed, "field_phases");

  std::vector<double> omega(K), phi(K);
  for (int k = 0; k < K; ++k) {
    omega[k] = spacing == FrequencySpacing::kRandom
                   ? freq_rng.uniform(0.0, omega_max)
                   : (k + 1) * omega_max / K;
    phi[k] = phase_rng.uniform(0.0, 2.0 * M_PI);
  }

  ControlField field{grid, RealVector::Zero(grid.n_points)};
  for (int i = 0; i < grid.n_points; ++i) {
    const double t = grid.sample_time(i);
    double s = 0.0;
    for (int k = 0; k < K; ++k) {
      s += std::sin(omega[k] * t + phi[k]);
    }
    field.samples(i) = field_envelope(t, grid.T) * s;
  }
  const double raw = fluence(field);
  if (raw <= 0.0) {
    throw std::runtime_error("initial_field: degenerate zero field");
  }
  field.samples *= f / std::sqrt(raw);
  return field;
}

double fluence(const ControlField& field) {
  return field.samples.squaredNorm() * field.grid.dt();
}

FieldSpectrum fourier_spectrum(const ControlField& field) {
  const int n = field.size();
  const int bins = n / 2 + 1;
  FieldSpectrum out;
  out.frequencies.resize(bins);
  out.magnitudes.resize(bins);
  for (int j = 0; j < bins; ++j) {
    const double theta = -2.0 * M_PI * j / n;
    const Complex w(std::cos(theta), std::sin(theta));
    Complex rot(1.0, 0.0);
    Complex acc(0.0, 0.0);
    for (int k = 0; k < n; ++k) {
      acc += field.samples(k) * rot;
      rot *= w;
    }
    out.frequencies(j) = 2.0 * M_PI * j / field.grid.T;
    out.magnitudes(j) = std::abs(acc);
  }
  return out;
}

void write_field_csv(const ControlField& field, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_field_csv: cannot open " + path);
  out << "t,epsilon\n";
  out.precision(17);
  for (int k = 0; k < field.size(); ++k) {
    out << field.grid.sample_time(k) << "," << field.samples(k) << "\n";
  }
}

ControlField read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_field_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,epsilon", 0) != 0) {
    throw std::runtime_error("read_field_csv: missing header in " + path);
  }
  std::vector<double> t, eps;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("read_field_csv: malformed row in " + path);
    }
    t.push_back(std::stod(line.substr(0, comma)));
    eps.push_back(std::stod(line.substr(comma + 1)));
  }
  const int n = static_cast<int>(eps.size());
  if (n < 2) throw std::runtime_error("read_field_csv: too few rows");
  const double dt = t[1] - t[0];
  ControlField field{TimeGrid{dt * n, n}, RealVector::Zero(n)};
  for (int k = 0; k < n; ++k) field.samples(k) = eps[k];
  return field;
}

}  // namespace qoct
