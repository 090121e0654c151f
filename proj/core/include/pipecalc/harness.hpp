#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pipecalc/characterization.hpp"
#include "pipecalc/generator.hpp"

namespace pipecalc {

struct CheckTally {
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;

  friend bool operator==(const CheckTally&, const CheckTally&) = default;
};

/// A failed check, with the coordinates needed to regenerate its instance.
struct HarnessCounterexample {
  std::string check;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::string detail;
};

struct HarnessVerdict {
  std::uint64_t seed = 0;
  std::uint64_t instance_count = 0;
  std::map<std::string, CheckTally> tallies;
  /// Ordered by instance index. At most HarnessOptions::max_counterexamples
  /// are kept; tallies count every violation.
  std::vector<HarnessCounterexample> counterexamples;
  /// Instances whose bottleneck set has two or more stages.
  std::uint64_t tied_instances = 0;
  /// Instances where some original bottleneck has factor exactly one.
  std::uint64_t unit_factor_instances = 0;

  std::uint64_t total_violations() const noexcept;
  bool pass() const noexcept { return total_violations() == 0; }
};

using ClassifyFn = std::function<PerturbationClassification(const Pipeline&, const Multiplier&)>;

struct HarnessOptions {
  /// 0 picks std::thread::hardware_concurrency(). The verdict does not
  /// depend on the thread count.
  unsigned threads = 0;
  std::size_t max_counterexamples = 50;
  /// Replaces classify() on the checked side. Lets tests plant a defect and
  /// confirm the harness catches it.
  ClassifyFn classify;
};

/// Generates instances 0..instance_count-1 and runs every characterisation,
/// bound and equivalence check on each against the brute-force oracle.
HarnessVerdict verify_all(const GeneratorConfig& cfg, const HarnessOptions& options = {});

/// Same checks for indices [first, last) only.
HarnessVerdict verify_range(const GeneratorConfig& cfg, std::uint64_t first, std::uint64_t last,
                            const HarnessOptions& options = {});

}  // namespace pipecalc
