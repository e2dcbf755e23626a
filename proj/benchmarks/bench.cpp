#include <benchmark/benchmark.h>

#include <string>

#include "herbnet/io.hpp"
#include "herbnet/net.hpp"
#include "herbnet/reduce.hpp"
#include "herbnet/sequent.hpp"

using namespace herbnet;

namespace {

NetFile fixture(const std::string& name) { return load_net(std::string(HERBNET_FIXTURES) + "/" + name + ".net"); }

void BM_CheckNet(benchmark::State& state) {
  NetFile nf = fixture("nonconfluent");
  for (auto _ : state) benchmark::DoNotOptimize(check_net(nf.forest, nf.theory));
}
BENCHMARK(BM_CheckNet);

void BM_NormalizeNonconfluent(benchmark::State& state) {
  NetFile nf = fixture("nonconfluent");
  NormalizeOptions opt;
  opt.first_cut = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(nf.forest, opt));
}
BENCHMARK(BM_NormalizeNonconfluent)->Arg(0)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_EmpireBudget(benchmark::State& state) {
  NetFile nf = fixture("empire_loop");
  NormalizeOptions opt;
  opt.strategy = Strategy::Empire;
  opt.max_steps = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(normalize(nf.forest, opt));
}
BENCHMARK(BM_EmpireBudget)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_Sequentialize(benchmark::State& state) {
  NetFile nf = fixture("drinker");
  for (auto _ : state) benchmark::DoNotOptimize(sequentialize(nf.forest, nf.theory));
}
BENCHMARK(BM_Sequentialize);

}  // namespace

BENCHMARK_MAIN();
