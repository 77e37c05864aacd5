// Compares the serial reference and the OpenMP-parallel simplex scans on
// the two distance kernels, plus the sample-parallel theorem verifier.
// Build with -DCMAKE_BUILD_TYPE=Release; control threads via OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "coherence/axioms.hpp"
#include "coherence/measures.hpp"

using namespace coherence;

namespace {

DensityMatrix bench_qutrit() { return random_state(3, 12345, Ensemble::HilbertSchmidt); }
DensityMatrix bench_qubit() { return random_state(2, 12345, Ensemble::BlochBall); }

void scan_qutrit(benchmark::State& state, DistanceKind kind, ExecPolicy policy) {
  const auto rho = bench_qutrit();
  DiagonalObjective objective(rho, kind);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto best = scan_simplex_grid(3, n, policy, objective);
    benchmark::DoNotOptimize(best);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(simplex_grid_size(3, n)));
}

void scan_qubit(benchmark::State& state, DistanceKind kind, ExecPolicy policy) {
  const auto rho = bench_qubit();
  DiagonalObjective objective(rho, kind);
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto best = scan_simplex_grid(2, n, policy, objective);
    benchmark::DoNotOptimize(best);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n + 1));
}

void BM_qutrit_trace_serial(benchmark::State& s) { scan_qutrit(s, DistanceKind::Trace, ExecPolicy::Serial); }
void BM_qutrit_trace_parallel(benchmark::State& s) { scan_qutrit(s, DistanceKind::Trace, ExecPolicy::Parallel); }
void BM_qutrit_fidelity_serial(benchmark::State& s) {
  scan_qutrit(s, DistanceKind::OneMinusSqrtFidelity, ExecPolicy::Serial);
}
void BM_qutrit_fidelity_parallel(benchmark::State& s) {
  scan_qutrit(s, DistanceKind::OneMinusSqrtFidelity, ExecPolicy::Parallel);
}
void BM_qubit_fidelity_serial(benchmark::State& s) {
  scan_qubit(s, DistanceKind::OneMinusSqrtFidelity, ExecPolicy::Serial);
}
void BM_qubit_fidelity_parallel(benchmark::State& s) {
  scan_qubit(s, DistanceKind::OneMinusSqrtFidelity, ExecPolicy::Parallel);
}

void BM_theorem_serial(benchmark::State& state) {
  for (auto _ : state) {
    auto summary = verify_class_theorem(QutritClass::X, static_cast<int>(state.range(0)), 42, 100, ExecPolicy::Serial);
    benchmark::DoNotOptimize(summary);
  }
}

void BM_theorem_parallel(benchmark::State& state) {
  for (auto _ : state) {
    auto summary =
        verify_class_theorem(QutritClass::X, static_cast<int>(state.range(0)), 42, 100, ExecPolicy::Parallel);
    benchmark::DoNotOptimize(summary);
  }
}

}  // namespace

BENCHMARK(BM_qutrit_trace_serial)->Arg(120)->Arg(300);
BENCHMARK(BM_qutrit_trace_parallel)->Arg(120)->Arg(300);
BENCHMARK(BM_qutrit_fidelity_serial)->Arg(120)->Arg(300);
BENCHMARK(BM_qutrit_fidelity_parallel)->Arg(120)->Arg(300);
BENCHMARK(BM_qubit_fidelity_serial)->Arg(100000);
BENCHMARK(BM_qubit_fidelity_parallel)->Arg(100000);
BENCHMARK(BM_theorem_serial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_theorem_parallel)->Arg(50)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
