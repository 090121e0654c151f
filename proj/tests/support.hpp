#pragma once

#include <random>
#include <string>
#include <vector>

#include "pipecalc/pipeline.hpp"

// Reference computations written without the library's bottleneck code.
namespace testing_support {

using pipecalc::Multiplier;
using pipecalc::Pipeline;
using pipecalc::Rational;
using pipecalc::StageId;

inline Pipeline make(const std::vector<Rational>& caps) {
  std::vector<pipecalc::Stage> stages;
  for (std::size_t i = 0; i < caps.size(); ++i) {
    stages.push_back({StageId("s" + std::to_string(i + 1)), caps[i]});
  }
  return Pipeline(std::move(stages));
}

inline Pipeline example1() { return Pipeline{{"a", 3}, {"b", 1}, {"c", 4}}; }

inline Rational scan_min(const std::vector<Rational>& xs) {
  Rational m = xs.at(0);
  for (const auto& x : xs) {
    if (x < m) m = x;
  }
  return m;
}

inline std::vector<std::size_t> scan_argmin(const std::vector<Rational>& xs) {
  const Rational m = scan_min(xs);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == m) out.push_back(i);
  }
  return out;
}

inline std::vector<Rational> caps_of(const Pipeline& p) {
  std::vector<Rational> out;
  for (const auto& s : p.stages()) out.push_back(s.capacity);
  return out;
}

inline std::vector<Rational> products_of(const Pipeline& p, const Multiplier& a) {
  std::vector<Rational> out;
  for (const auto& s : p.stages()) out.push_back(s.capacity * a.factor(s.id));
  return out;
}

// Hand-rolled generator for property tests, separate from the library's SplitMix64 streams.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : eng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  bool coin() { return integer(0, 1) == 1; }

  Rational positive() { return Rational(integer(1, 24), integer(1, 4)); }
  Rational factor() {
    switch (integer(0, 3)) {
      case 0:
        return 1;
      case 1:
        return Rational(integer(1, 4) + 4, 4);
      default:
        return integer(1, 5);
    }
  }

  Pipeline pipeline(int max_stages = 7) {
    const int n = integer(1, max_stages);
    std::vector<Rational> caps;
    for (int i = 0; i < n; ++i) caps.push_back(coin() ? Rational(integer(1, 5)) : positive());
    return make(caps);
  }

  Multiplier multiplier(const Pipeline& p) {
    std::vector<Rational> f;
    for (std::size_t i = 0; i < p.size(); ++i) f.push_back(factor());
    return Multiplier::in_stage_order(p, f);
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace testing_support
