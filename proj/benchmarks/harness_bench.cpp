#include <benchmark/benchmark.h>

#include "pipecalc/harness.hpp"

namespace {

void BM_VerifyBatch(benchmark::State& state) {
  pipecalc::GeneratorConfig cfg;
  cfg.seed = 42;
  cfg.instance_count = static_cast<std::uint64_t>(state.range(0));
  pipecalc::HarnessOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(pipecalc::verify_all(cfg, opts));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerifyBatch)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_GenerateInstance(benchmark::State& state) {
  pipecalc::GeneratorConfig cfg;
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(pipecalc::generate_instance(cfg, i++ % cfg.instance_count));
}
BENCHMARK(BM_GenerateInstance);

}  // namespace
