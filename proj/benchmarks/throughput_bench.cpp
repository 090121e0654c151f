#include <benchmark/benchmark.h>

#include "pipecalc/characterization.hpp"
#include "pipecalc/generator.hpp"

namespace {

pipecalc::Instance sized(std::size_t stages) {
  pipecalc::GeneratorConfig cfg;
  cfg.seed = 1;
  cfg.max_stages = stages;
  for (std::uint64_t i = 0;; ++i) {
    auto inst = pipecalc::generate_instance(cfg, i);
    if (inst.pipeline.size() == stages) return inst;
  }
}

void BM_Throughput(benchmark::State& state) {
  const auto inst = sized(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pipecalc::throughput(inst.pipeline));
}
BENCHMARK(BM_Throughput)->Arg(1)->Arg(8)->Arg(64);

void BM_Classify(benchmark::State& state) {
  const auto inst = sized(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(pipecalc::classify(inst.pipeline, inst.multiplier));
}
BENCHMARK(BM_Classify)->Arg(8)->Arg(64);

void BM_VerifyCharacterizations(benchmark::State& state) {
  const auto inst = sized(8);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pipecalc::verify_characterizations(inst.pipeline, inst.multiplier));
  }
}
BENCHMARK(BM_VerifyCharacterizations);

}  // namespace
