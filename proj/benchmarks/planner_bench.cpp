#include <benchmark/benchmark.h>

#include "pipecalc/planner.hpp"

namespace {

void BM_MaxMin(benchmark::State& state) {
  const pipecalc::Pipeline p{{"a", 3}, {"b", 1}, {"c", 4}, {"d", 7}};
  const auto c = pipecalc::CostModel::uniform(p, 1, state.range(0));
  const pipecalc::Rational tol(1, 1024);
  for (auto _ : state) benchmark::DoNotOptimize(pipecalc::maxmin_allocation(p, c, tol));
}
BENCHMARK(BM_MaxMin)->Arg(1)->Arg(6)->Arg(1000);

void BM_Trivial(benchmark::State& state) {
  const pipecalc::Pipeline p{{"a", 3}, {"b", 1}, {"c", 4}};
  const auto c = pipecalc::CostModel::uniform(p, 1, 5);
  for (auto _ : state) benchmark::DoNotOptimize(pipecalc::trivial_allocation(p, c));
}
BENCHMARK(BM_Trivial);

}  // namespace
