#pragma once

#include "pipecalc/pipeline.hpp"

namespace pipecalc {

/// Independent attacker and defender pipelines. Their stage sets need not be
/// related and nothing couples them.
struct PipePair {
  Pipeline attacker;
  Pipeline defender;
};

struct RatioReport {
  Rational baseline_ratio;   // T(attacker) / T(defender)
  Rational perturbed_ratio;  // same, after perturbation
  Rational attacker_gain;    // perturbed / original attacker throughput
  Rational defender_gain;
  /// perturbed_ratio > baseline_ratio, equivalently attacker_gain > defender_gain.
  bool favours_attacker = false;
};

/// Computes both ratios and both relative gains exactly. The ratio comparison
/// and the gain comparison are evaluated separately and must agree, otherwise
/// InternalVerificationError is thrown. Admissibility failures are prefixed
/// with "attacker:" or "defender:".
RatioReport ratio_report(const PipePair& pair, const Multiplier& attacker_mult,
                         const Multiplier& defender_mult);

/// Attacker improves every one of its bottlenecks while the defender leaves
/// at least one of its own at factor one. Whenever this holds the ratio moves
/// in the attacker's favour.
bool defender_misses_bottleneck(const PipePair& pair, const Multiplier& attacker_mult,
                                const Multiplier& defender_mult);

}  // namespace pipecalc
