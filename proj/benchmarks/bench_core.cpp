#include <benchmark/benchmark.h>

#include "qmonogamy/experiments.hpp"

using namespace qmono;

static void BM_HermitianEig(benchmark::State& state) {
  const auto d = static_cast<Index>(state.range(0));
  const ComplexMatrix m = random_density(d, d, 1).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(hermitian_eig(m));
}
BENCHMARK(BM_HermitianEig)->Arg(4)->Arg(16)->Arg(64)->Arg(256);

static void BM_PartialTrace(benchmark::State& state) {
  const auto n = static_cast<Index>(state.range(0));
  const DimSignature sig(std::vector<Index>(n, 2));
  const ComplexMatrix m = random_density(sig.total(), 4, 2).matrix();
  const std::vector<Index> keep{0, n - 1};
  for (auto _ : state) benchmark::DoNotOptimize(partial_trace(m, sig, keep));
}
BENCHMARK(BM_PartialTrace)->Arg(4)->Arg(6)->Arg(8);

static void BM_WitnessRow(benchmark::State& state) {
  double lambda = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nonmarkov_witness_row(lambda));
    lambda = lambda > 0.99 ? 0.0 : lambda + 0.01;
  }
}
BENCHMARK(BM_WitnessRow);

static void BM_MqmmiRow(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(mqmmi_row(0.4));
}
BENCHMARK(BM_MqmmiRow);

static void BM_BuildProcessTensor(benchmark::State& state) {
  const auto c = lambda_circuit(0.5);
  const auto k = static_cast<Index>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_process_tensor(c, k));
}
BENCHMARK(BM_BuildProcessTensor)->DenseRange(2, 4);

static void BM_ChainWitnesses(benchmark::State& state) {
  const auto p = random_dilated_chain(static_cast<Index>(state.range(0)), 2, 2, 7).chain();
  for (auto _ : state) benchmark::DoNotOptimize(chain_witnesses(p));
}
BENCHMARK(BM_ChainWitnesses)->Arg(4)->Arg(6)->Arg(8);

BENCHMARK_MAIN();
