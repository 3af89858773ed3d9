#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "qoct/fields.hpp"
#include "qoct/systems.hpp"

using namespace qoct;

namespace {

ControlSystem rotor_system(int n, std::uint64_t seed = 3) {
  return {build_rotor_drift(n), build_dipole_flat(n, 1.0, seed)};
}

}  // namespace

TEST_SUITE_BEGIN("fields");

TEST_CASE("grid arithmetic") {
  const TimeGrid grid{10.0, 100};
  CHECK(grid.dt() == doctest::Approx(0.1));
  CHECK(grid.node(0) == 0.0);
  CHECK(grid.node(100) == doctest::Approx(10.0));
  CHECK(grid.sample_time(0) == doctest::Approx(0.05));
  CHECK(grid.sample_time(99) == doctest::Approx(9.95));
}

TEST_CASE("default grid sizes follow the standard protocol") {
  CHECK(default_grid(rotor_system(8)).n_points == 512);
  CHECK(default_grid(rotor_system(16)).n_points == 2048);
  // T = 112 starts at 4096 and doubles until the |1>->|N> transition
  // (omega = 120) satisfies dt * omega <= pi.
  CHECK(default_grid(rotor_system(16), 112.0).n_points == 8192);
  CHECK(default_grid(rotor_system(8)).T == 14.0);
  const ControlSystem osc{build_oscillator_drift(8),
                          build_dipole_flat(8, 1.0, 3)};
  // Oscillator base of 512 is doubled once by the same Nyquist guard.
  CHECK(default_grid(osc).n_points == 1024);
}

TEST_CASE("grid validation enforces the Nyquist guard") {
  const ControlSystem sys = rotor_system(16);  // omega_1N = 120
  CHECK_THROWS_AS(validate_grid(TimeGrid{14.0, 256}, sys),
                  std::invalid_argument);
  CHECK_NOTHROW(validate_grid(TimeGrid{14.0, 2048}, sys));
}

TEST_CASE("envelope value at the edges and center") {
  CHECK(field_envelope(0.0, 14.0) ==
        doctest::Approx(std::exp(-2.0 * M_PI)).epsilon(1e-12));
  CHECK(field_envelope(14.0, 14.0) ==
        doctest::Approx(std::exp(-2.0 * M_PI)).epsilon(1e-12));
  CHECK(field_envelope(7.0, 14.0) == doctest::Approx(1.0));
}

TEST_CASE("initial field hits the requested fluence exactly") {
  const ControlSystem sys = rotor_system(4);
  const TimeGrid grid = default_grid(sys);
  for (double f : {1.0, 10.0}) {
    const ControlField field = initial_field(grid, 20, f, 5, sys);
    CHECK(fluence(field) == doctest::Approx(f * f).epsilon(1e-10));
  }
}

TEST_CASE("initial field is deterministic and seed-sensitive") {
  const ControlSystem sys = rotor_system(4);
  const TimeGrid grid = default_grid(sys);
  const ControlField a = initial_field(grid, 20, 10.0, 5, sys);
  const ControlField b = initial_field(grid, 20, 10.0, 5, sys);
  const ControlField c = initial_field(grid, 20, 10.0, 6, sys);
  CHECK((a.samples - b.samples).norm() == 0.0);
  CHECK((a.samples - c.samples).norm() > 0.0);
}

TEST_CASE("even frequency spacing differs from random but keeps fluence") {
  const ControlSystem sys = rotor_system(4);
  const TimeGrid grid = default_grid(sys);
  const ControlField even =
      initial_field(grid, 10, 10.0, 5, sys, FrequencySpacing::kEven);
  const ControlField rnd =
      initial_field(grid, 10, 10.0, 5, sys, FrequencySpacing::kRandom);
  CHECK(fluence(even) == doctest::Approx(100.0).epsilon(1e-10));
  CHECK((even.samples - rnd.samples).norm() > 0.0);
}

TEST_CASE("fluence of simple fields") {
  TimeGrid grid{2.0, 64};
  ControlField zero{grid, RealVector::Zero(64)};
  CHECK(fluence(zero) == 0.0);
  ControlField constant{grid, RealVector::Constant(64, 3.0)};
  CHECK(fluence(constant) == doctest::Approx(18.0).epsilon(1e-12));  // c^2 T
  // Quadratic scaling.
  ControlField doubled{grid, 2.0 * constant.samples};
  CHECK(fluence(doubled) == doctest::Approx(4.0 * fluence(constant)));
}

TEST_CASE("spectrum of a pure on-grid tone is a single dominant bin") {
  TimeGrid grid{8.0, 256};
  ControlField field{grid, RealVector(256)};
  const double omega = 2.0 * M_PI * 4.0 / grid.T;  // 4 cycles on [0,T]
  for (int k = 0; k < 256; ++k) {
    field.samples(k) = std::cos(omega * grid.sample_time(k));
  }
  const FieldSpectrum spec = fourier_spectrum(field);
  CHECK(spec.frequencies.size() == 129);
  int peak = 0;
  for (int i = 1; i < spec.magnitudes.size(); ++i) {
    if (spec.magnitudes(i) > spec.magnitudes(peak)) peak = i;
  }
  CHECK(spec.frequencies(peak) == doctest::Approx(omega).epsilon(1e-9));
  for (int i = 0; i < spec.magnitudes.size(); ++i) {
    if (std::abs(i - peak) > 0) {
      CHECK(spec.magnitudes(i) <= spec.magnitudes(peak) / 100.0);
    }
  }
}

TEST_CASE("spectrum satisfies Parseval") {
  const ControlSystem sys = rotor_system(4);
  const TimeGrid grid{6.0, 128};
  const ControlField field = initial_field(grid, 12, 3.0, 8, sys);
  const FieldSpectrum spec = fourier_spectrum(field);
  // One-sided magnitudes: interior bins carry weight 2.
  double power = 0.0;
  const int n = field.size();
  for (int i = 0; i < spec.magnitudes.size(); ++i) {
    const bool edge = (i == 0) || (i == spec.magnitudes.size() - 1 && n % 2 == 0);
    power += (edge ? 1.0 : 2.0) * spec.magnitudes(i) * spec.magnitudes(i);
  }
  CHECK(power == doctest::Approx(n * field.samples.squaredNorm())
                     .epsilon(1e-9));
  CHECK(spec.magnitudes.minCoeff() >= 0.0);
}

TEST_CASE("zero field has a zero spectrum") {
  ControlField zero{TimeGrid{4.0, 64}, RealVector::Zero(64)};
  CHECK(fourier_spectrum(zero).magnitudes.norm() == 0.0);
}

TEST_CASE("field CSV round-trips") {
  namespace fs = std::filesystem;
  const ControlSystem sys = rotor_system(4);
  const TimeGrid grid{6.0, 128};
  const ControlField field = initial_field(grid, 12, 3.0, 8, sys);
  const fs::path path = fs::temp_directory_path() / "qoct_field_rt.csv";
  write_field_csv(field, path.string());
  const ControlField back = read_field_csv(path.string());
  CHECK(back.size() == field.size());
  CHECK(back.grid.T == doctest::Approx(field.grid.T).epsilon(1e-12));
  CHECK((back.samples - field.samples).norm() < 1e-12);
  fs::remove(path);
}

TEST_SUITE_END();
