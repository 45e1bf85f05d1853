// Microbenchmarks for the hot paths of a trajectory run: Hamiltonian
// assembly, the dense eigensolve, the eigenvector-direct pair reduction and
// the entropy inversion. Chain length is the benchmark argument.

#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "adchain/entanglement.hpp"
#include "adchain/hamiltonian.hpp"
#include "adchain/isentrope.hpp"
#include "adchain/thermo.hpp"

namespace {

using namespace adchain;

ChainGeometry chain(int n) { return ChainGeometry(n, std::numbers::pi / 2, 0.0); }

void bm_build_hdd(benchmark::State& state) {
  const ChainGeometry geom = chain(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_hdd(geom));
}
BENCHMARK(bm_build_hdd)->DenseRange(4, 10, 2);

void bm_diagonalize(benchmark::State& state) {
  const ChainGeometry geom = chain(static_cast<int>(state.range(0)));
  const Eigen::MatrixXcd h = build_h(geom, FieldSpec(5.0));
  for (auto _ : state) benchmark::DoNotOptimize(diagonalize(h));
}
BENCHMARK(bm_diagonalize)->DenseRange(4, 10, 2);

void bm_reduce(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Spectrum spec = diagonalize(build_h(chain(n), FieldSpec(5.0)));
  const SpinPair pair(1, n > 2 ? 3 : 2);
  for (auto _ : state) benchmark::DoNotOptimize(reduce(spec, 1.0, pair));
}
BENCHMARK(bm_reduce)->DenseRange(4, 10, 2);

void bm_solve_beta(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Spectrum spec = diagonalize(build_h(chain(n), FieldSpec(5.0)));
  const double s_target = 0.5 * n * std::numbers::ln2;
  for (auto _ : state) benchmark::DoNotOptimize(solve_beta(spec, s_target));
}
BENCHMARK(bm_solve_beta)->DenseRange(4, 10, 2);

}  // namespace

BENCHMARK_MAIN();
