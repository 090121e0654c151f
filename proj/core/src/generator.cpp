#include "pipecalc/generator.hpp"

#include <algorithm>
#include <string>

namespace pipecalc {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}  // namespace

std::uint64_t SplitMix64::mix(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::next() noexcept {
  state_ += kGolden;
  return mix(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) noexcept {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % bound;
  }
}

SplitMix64 make_stream(std::uint64_t seed, std::uint64_t index, Stream tag) noexcept {
  const auto t = static_cast<std::uint64_t>(tag);
  return SplitMix64(SplitMix64::mix(SplitMix64::mix(seed + (t + 1) * kGolden) ^ index));
}

void GeneratorConfig::validate() const {
  if (max_stages == 0) throw ParameterError("max_stages must be positive");
  if (capacity_grid.empty()) throw ParameterError("capacity grid is empty");
  if (factor_grid.empty()) throw ParameterError("factor grid is empty");
  for (const auto& c : capacity_grid) {
    if (!c.is_positive()) throw ParameterError("capacity grid value " + c.str() + " is not positive");
  }
  for (const auto& f : factor_grid) {
    if (f < 1) throw ParameterError("factor grid value " + f.str() + " is below 1");
  }
  if (std::find(factor_grid.begin(), factor_grid.end(), Rational(1)) == factor_grid.end()) {
    throw ParameterError("factor grid must contain 1");
  }
}

Instance draw_instance(const GeneratorConfig& cfg, SplitMix64& rng) {
  const auto n = static_cast<std::size_t>(rng.below(cfg.max_stages)) + 1;
  std::vector<Stage> stages;
  stages.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    stages.push_back({StageId("s" + std::to_string(i + 1)), rng.pick(cfg.capacity_grid)});
  }
  Pipeline p(std::move(stages));
  std::vector<Rational> factors;
  factors.reserve(n);
  for (std::size_t i = 0; i < n; ++i) factors.push_back(rng.pick(cfg.factor_grid));
  auto a = Multiplier::in_stage_order(p, factors);
  return {std::move(p), std::move(a)};
}

Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t index) {
  if (index >= cfg.instance_count) {
    throw PreconditionError("instance index " + std::to_string(index) + " is not below count " +
                            std::to_string(cfg.instance_count));
  }
  cfg.validate();
  auto rng = make_stream(cfg.seed, index, Stream::Instance);
  return draw_instance(cfg, rng);
}

}  // namespace pipecalc
