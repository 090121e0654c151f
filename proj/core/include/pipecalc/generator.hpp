#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pipecalc/pipeline.hpp"

namespace pipecalc {

/// SplitMix64 (Steele, Lea and Flood, 2014). Fully specified, so generated
/// instances are identical on every platform and standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

  std::uint64_t next() noexcept;

  /// Uniform in [0, bound) by rejection: draws below 2^64 mod bound are
  /// discarded, the rest are reduced mod bound. `bound` must be > 0.
  std::uint64_t below(std::uint64_t bound) noexcept;

  template <class T>
  const T& pick(const std::vector<T>& items) noexcept {
    return items[static_cast<std::size_t>(below(items.size()))];
  }

  /// The SplitMix64 output function applied to `z`.
  static std::uint64_t mix(std::uint64_t z) noexcept;

 private:
  std::uint64_t state_;
};

/// Independent random streams derived from one (seed, index) coordinate.
enum class Stream : std::uint64_t {
  Instance = 0,
  Dominating = 1,
  Authority = 2,
  Defender = 3,
  FalsePositive = 4,
};

/// Stream with initial state mix(mix(seed + (tag + 1) * 0x9E3779B97F4A7C15) ^ index).
SplitMix64 make_stream(std::uint64_t seed, std::uint64_t index, Stream tag) noexcept;

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::uint64_t instance_count = 10000;
  std::size_t max_stages = 8;
  std::vector<Rational> capacity_grid = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  /// 1 is listed twice so unimproved bottlenecks come up often.
  std::vector<Rational> factor_grid = {1, 1, Rational(3, 2), 2, 5};

  /// Throws ParameterError: empty grids, nonpositive capacities, factors
  /// below one, no factor equal to one, or max_stages == 0.
  void validate() const;
};

struct Instance {
  Pipeline pipeline;
  Multiplier multiplier;
};

/// Draws a pipeline from `rng` the same way generate_instance does: stage
/// count uniform in [1, max_stages], ids s1..sn, capacities uniform over the
/// capacity grid, then factors uniform over the factor grid.
Instance draw_instance(const GeneratorConfig& cfg, SplitMix64& rng);

/// Deterministic in (cfg.seed, index). Throws PreconditionError if index is
/// not below cfg.instance_count.
Instance generate_instance(const GeneratorConfig& cfg, std::uint64_t index);

}  // namespace pipecalc
