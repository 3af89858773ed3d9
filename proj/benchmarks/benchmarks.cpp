// Microbenchmarks for the hot paths: matrix exponential, propagation,
// gradient evaluation, and the controllability Gramian.
//
// Run: ./build/benchmarks/qoct_benchmarks [--benchmark_filter=...]

#include <benchmark/benchmark.h>

#include "qoct/fields.hpp"
#include "qoct/landscape.hpp"
#include "qoct/matrix.hpp"
#include "qoct/objective.hpp"
#include "qoct/propagation.hpp"
#include "qoct/systems.hpp"

using namespace qoct;

namespace {

struct Fixture {
  ControlSystem system;
  ControlField field;
  ComplexMatrix target;
};

Fixture make_fixture(int dim) {
  ControlSystem sys{build_rotor_drift(dim), build_dipole_flat(dim, 1.0, 7)};
  const TimeGrid grid = default_grid(sys);
  ControlField field = initial_field(grid, 20, 10.0, 7, sys);
  ComplexMatrix w = build_haar_gate(dim, 1007).matrix;
  return {std::move(sys), std::move(field), std::move(w)};
}

void BM_expm(benchmark::State& state) {
  const int dim = static_cast<int>(state.range(0));
  const ComplexMatrix h = build_rotor_drift(dim).matrix;
  for (auto _ : state) {
    benchmark::DoNotOptimize(matrix_exponential(h, Complex(0.0, -1.0)));
  }
}
BENCHMARK(BM_expm)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_propagate(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(propagate(f.system, f.field));
  }
  state.SetItemsProcessed(state.iterations() * f.field.size());
}
BENCHMARK(BM_propagate)->Arg(2)->Arg(4)->Arg(8)->Arg(16)
    ->Unit(benchmark::kMillisecond);

void BM_gradient(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(objective_gradient(f.system, f.field, f.target));
  }
  state.SetItemsProcessed(state.iterations() * f.field.size());
}
BENCHMARK(BM_gradient)->Arg(2)->Arg(4)->Arg(8)->Arg(16)
    ->Unit(benchmark::kMillisecond);

void BM_gramian(benchmark::State& state) {
  const Fixture f = make_fixture(static_cast<int>(state.range(0)));
  StepDecompositions steps;
  const PropagatorTrajectory traj = propagate(f.system, f.field, &steps);
  const DipoleTrajectory dip = dipole_in_time(traj, f.system, f.field, &steps);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gramian(traj, dip));
  }
}
BENCHMARK(BM_gramian)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_hessian_kernel(benchmark::State& state) {
  ControlSystem sys{build_rotor_drift(2), build_dipole_flat(2, 1.0, 7)};
  const TimeGrid grid{1.0, 64};
  const ControlField field = initial_field(grid, 5, 0.5, 13, sys);
  const ComplexMatrix w = build_haar_gate(2, 1007).matrix;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hessian_kernel(sys, field, w));
  }
}
BENCHMARK(BM_hessian_kernel)->Unit(benchmark::kMillisecond);

}  // namespace
