// Serial reference kernels against the OpenMP ones, per layer and per
// reduction. Arg is the qubit count.

#include <vector>

#include <benchmark/benchmark.h>

#include "qaoa/graphs.hpp"
#include "qaoa/kernels.hpp"

namespace {

using namespace qaoa;
using kernels::Amplitude;

struct Fixture {
  int n;
  Graph graph;
  std::vector<std::uint16_t> table;
  std::vector<Amplitude> amps;

  explicit Fixture(int qubits) : n(qubits) {
    Rng rng(derive_seed(1, "bench", static_cast<std::uint64_t>(qubits)));
    graph = gen_regular(n, 3, rng);
    table.resize(std::size_t{1} << n);
    kernels::parallel::cost_table(graph, table);
    amps.resize(table.size());
    kernels::parallel::fill_uniform(amps);
  }
};

template <auto Mixer>
void BM_mixer(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Mixer(f.amps, f.n, 0.3);
    benchmark::ClobberMemory();
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(f.amps.size() * sizeof(Amplitude)));
}

template <auto Phase>
void BM_phase(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    Phase(f.amps, f.table, 0.7);
    benchmark::ClobberMemory();
  }
}

void BM_layer_reference(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kernels::reference::apply_phase(f.amps, f.table, 0.7);
    kernels::reference::apply_mixer(f.amps, f.n, 0.3);
    benchmark::ClobberMemory();
  }
}

void BM_layer_parallel(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    kernels::parallel::apply_layer(f.amps, f.n, f.table, 0.7, 0.3);
    benchmark::ClobberMemory();
  }
}

template <auto Expect>
void BM_expectation(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Expect(f.amps, f.table));
}

template <auto Edges>
void BM_edge_expectations(benchmark::State& state) {
  Fixture f(static_cast<int>(state.range(0)));
  std::vector<double> out(static_cast<std::size_t>(f.graph.num_edges()));
  for (auto _ : state) {
    Edges(f.amps, f.graph, out);
    benchmark::DoNotOptimize(out.data());
  }
}

constexpr int kSmall = 16;
constexpr int kLarge = 22;

}  // namespace

BENCHMARK(BM_mixer<kernels::reference::apply_mixer>)->Name("mixer/reference")->DenseRange(kSmall, kLarge, 2);
BENCHMARK(BM_mixer<kernels::parallel::apply_mixer>)->Name("mixer/parallel")->DenseRange(kSmall, kLarge, 2);
BENCHMARK(BM_phase<kernels::reference::apply_phase>)->Name("phase/reference")->DenseRange(kSmall, kLarge, 2);
BENCHMARK(BM_phase<kernels::parallel::apply_phase>)->Name("phase/parallel")->DenseRange(kSmall, kLarge, 2);
BENCHMARK(BM_layer_reference)->Name("layer/reference")->DenseRange(kSmall, kLarge, 2);
BENCHMARK(BM_layer_parallel)->Name("layer/parallel")->DenseRange(kSmall, kLarge, 2);
BENCHMARK(BM_expectation<kernels::reference::expectation>)->Name("expectation/reference")->DenseRange(kSmall, kLarge, 2);
BENCHMARK(BM_expectation<kernels::parallel::expectation>)->Name("expectation/parallel")->DenseRange(kSmall, kLarge, 2);
BENCHMARK(BM_edge_expectations<kernels::reference::edge_expectations>)
    ->Name("edges/reference")
    ->DenseRange(kSmall, kLarge, 2);
BENCHMARK(BM_edge_expectations<kernels::parallel::edge_expectations>)
    ->Name("edges/parallel")
    ->DenseRange(kSmall, kLarge, 2);

BENCHMARK_MAIN();
