#include <benchmark/benchmark.h>

#include "qcenter/envalg.hpp"
#include "qcenter/invcenter.hpp"

using namespace qcenter;

namespace {

const SymplecticSpace k4 = SymplecticSpace::standard(2);

HamiltonianAction sl2_action(int N) {
  return HamiltonianAction(LieAlgebraData::sl2(), StarProduct(k4, N),
                           {k4.parse("q2*p1"), k4.parse("q1*p1 - q2*p2"), k4.parse("q1*p2")});
}

}  // namespace

static void BM_Moyal(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  StarProduct star(k4, 2 * d);
  const Poly f = k4.parse("q1 + 2*p1 - q2*p2 + 3").pow(static_cast<unsigned>(d));
  const Poly g = k4.parse("p1 - q2 + 1/2*q1*p2").pow(static_cast<unsigned>(d));
  for (auto _ : state) benchmark::DoNotOptimize(star.moyal(f, g));
}
BENCHMARK(BM_Moyal)->DenseRange(2, 6, 2);

static void BM_PbwNormalize(benchmark::State& state) {
  const auto len = static_cast<std::size_t>(state.range(0));
  std::vector<std::size_t> word;
  for (std::size_t i = 0; i < len; ++i) word.push_back(2 - i % 3);
  for (auto _ : state) {
    // fresh engine each time so the memo does not hide the rewriting cost
    EnvelopingAlgebra U(LieAlgebraData::sl2(), static_cast<int>(len));
    benchmark::DoNotOptimize(U.normalize(word, {Scalar(1)}));
  }
}
BENCHMARK(BM_PbwNormalize)->DenseRange(3, 9, 3);

static void BM_QuantumCenterSlice(benchmark::State& state) {
  const int D = static_cast<int>(state.range(0));
  const auto act = sl2_action(D / 2);
  for (auto _ : state) benchmark::DoNotOptimize(quantum_center_up_to(act, D, D + 2, D / 2));
}
BENCHMARK(BM_QuantumCenterSlice)->DenseRange(4, 8, 2)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
