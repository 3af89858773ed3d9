#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qoct/matrix.hpp"
#include "qoct/systems.hpp"

namespace qoct {

/// Uniform grid on [0, T]. Sample k is the field value held over
/// [t_k, t_{k+1}); continuous fields are sampled at the interval midpoint
/// so refinement converges at second order.
struct TimeGrid {
  double T = 14.0;
  int n_points = 512;

  double dt() const { return T / n_points; }
  double node(int k) const { return k * dt(); }
  double sample_time(int k) const { return (k + 0.5) * dt(); }
};

struct ControlField {
  TimeGrid grid;
  RealVector samples;  // length grid.n_points

  int size() const { return static_cast<int>(samples.size()); }
};

struct FieldSpectrum {
  RealVector frequencies;  // angular, length n_points/2 + 1
  RealVector magnitudes;
};

enum class FrequencySpacing { kRandom, kEven };

/// Grid sized for the system per the standard protocol: rotor at T = 14 uses
/// 512 points for N <= 8, 2048 for N = 16, 4096 for N = 32; the oscillator
/// uses 512/1024/2048; T > 14 uses 4096. The point count is doubled as needed
/// until dt * omega_{1N} <= pi.
TimeGrid default_grid(const ControlSystem& system,
                      std::optional<double> T = std::nullopt);

/// Throws when the grid cannot resolve the |1> -> |N> transition.
void validate_grid(const TimeGrid& grid, const ControlSystem& system);

/// Gaussian envelope exp[-(8 pi / T^2)(t - T/2)^2] at time t.
double field_envelope(double t, double T);

/// Envelope times K sinusoids with frequencies on [0, omega_{1N}] and random
/// phases, normalized to unit fluence and scaled by f.
ControlField initial_field(const TimeGrid& grid, int K, double f,
                           std::uint64_t seed, const ControlSystem& system,
                           FrequencySpacing spacing = FrequencySpacing::kRandom);

/// Integral of eps^2 over [0, T] (piecewise-constant samples, so the sum
/// of squared samples times dt is exact).
double fluence(const ControlField& field);

/// One-sided magnitudes of the real-input DFT; frequencies in angular units.
FieldSpectrum fourier_spectrum(const ControlField& field);

/// CSV with header line "t,epsilon".
void write_field_csv(const ControlField& field, const std::string& path);
ControlField read_field_csv(const std::string& path);

}  // namespace qoct
