// Serial reference kernels against their OpenMP counterparts.
// Thread count follows OMP_NUM_THREADS.

#include <benchmark/benchmark.h>

#include "algnet/busy_beaver.hpp"
#include "algnet/network.hpp"
#include "algnet/tvg.hpp"

using namespace algnet;

namespace {

const std::vector<machine::Program>& programs18() {
  static const auto p = machine::enumerate_programs(18);
  return p;
}

const network::Assembly& assembly(std::size_t n) {
  static std::map<std::size_t, network::Assembly> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    const auto gen = tvg::gen_small_diameter(tvg::Family::ReplicatedRandomRegular, n, 3);
    it = cache.emplace(n, network::assemble(gen.graph, network::sample_population(n, 3))).first;
  }
  return it->second;
}

const network::RunParams kParams{Bitstring("1"), machine::FinalProgram::halt(), {}, 100000};

void BM_EvaluateAllSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(machine::serial::evaluate_all(programs18(), Bitstring(), 100000));
}
void BM_EvaluateAllParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(machine::evaluate_all(programs18(), Bitstring(), 100000));
}

void BM_EnumerateBbSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(machine::serial::enumerate_bb(st.range(0), 100000));
}
void BM_EnumerateBbParallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(machine::enumerate_bb(st.range(0), 100000));
}

void BM_ArrivalMatrixSerial(benchmark::State& st) {
  const auto& g = assembly(st.range(0)).graph;
  for (auto _ : st) benchmark::DoNotOptimize(tvg::serial::arrival_matrix(g, 0));
}
void BM_ArrivalMatrixParallel(benchmark::State& st) {
  const auto& g = assembly(st.range(0)).graph;
  for (auto _ : st) benchmark::DoNotOptimize(tvg::arrival_matrix(g, 0));
}

void BM_EvaluateNodesSerial(benchmark::State& st) {
  const auto& a = assembly(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(network::serial::evaluate_nodes(a, kParams.w, kParams.budget));
}
void BM_EvaluateNodesParallel(benchmark::State& st) {
  const auto& a = assembly(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(network::evaluate_nodes(a, kParams.w, kParams.budget));
}

void BM_SifpCycleSerial(benchmark::State& st) {
  const auto& a = assembly(st.range(0));
  const auto s1 = network::first_cycle(a, network::evaluate_nodes(a, kParams.w, kParams.budget));
  for (auto _ : st) benchmark::DoNotOptimize(network::serial::sifp_cycle(a, s1, kParams));
}
void BM_SifpCycleParallel(benchmark::State& st) {
  const auto& a = assembly(st.range(0));
  const auto s1 = network::first_cycle(a, network::evaluate_nodes(a, kParams.w, kParams.budget));
  for (auto _ : st) benchmark::DoNotOptimize(network::sifp_cycle(a, s1, kParams));
}

void BM_RunNetworkedSerial(benchmark::State& st) {
  const auto& a = assembly(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(network::serial::run_networked(a, kParams));
}
void BM_RunNetworkedParallel(benchmark::State& st) {
  const auto& a = assembly(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(network::run_networked(a, kParams));
}

}  // namespace

BENCHMARK(BM_EvaluateAllSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateAllParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateBbSerial)->Arg(20)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateBbParallel)->Arg(20)->Arg(22)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ArrivalMatrixSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ArrivalMatrixParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_EvaluateNodesSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EvaluateNodesParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SifpCycleSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SifpCycleParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_RunNetworkedSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RunNetworkedParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
