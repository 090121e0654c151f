#include "pipecalc/adversarial.hpp"

#include <algorithm>

namespace pipecalc {
namespace {

void check_side(const char* side, const Pipeline& p, const Multiplier& a) {
  try {
    check_admissible(p, a);
  } catch (const AdmissibilityError& e) {
    throw AdmissibilityError(std::string(side) + ": " + e.what());
  }
}

}  // namespace

RatioReport ratio_report(const PipePair& pair, const Multiplier& attacker_mult,
                         const Multiplier& defender_mult) {
  check_side("attacker", pair.attacker, attacker_mult);
  check_side("defender", pair.defender, defender_mult);

  const Rational ta = throughput(pair.attacker);
  const Rational td = throughput(pair.defender);
  const Rational ta_pert = perturbed_throughput(pair.attacker, attacker_mult);
  const Rational td_pert = perturbed_throughput(pair.defender, defender_mult);

  RatioReport r{ta / td, ta_pert / td_pert, ta_pert / ta, td_pert / td, false};
  r.favours_attacker = r.perturbed_ratio > r.baseline_ratio;
  if (r.favours_attacker != (r.attacker_gain > r.defender_gain)) {
    throw InternalVerificationError("ratio comparison disagrees with relative-gain comparison");
  }
  return r;
}

bool defender_misses_bottleneck(const PipePair& pair, const Multiplier& attacker_mult,
                                const Multiplier& defender_mult) {
  check_side("attacker", pair.attacker, attacker_mult);
  check_side("defender", pair.defender, defender_mult);
  const auto ba = bottleneck_report(pair.attacker).bottlenecks;
  const auto bd = bottleneck_report(pair.defender).bottlenecks;
  const bool attacker_all = std::all_of(ba.begin(), ba.end(), [&](const StageId& v) {
    return attacker_mult.factor(v) > 1;
  });
  const bool defender_some = std::any_of(bd.begin(), bd.end(), [&](const StageId& v) {
    return defender_mult.factor(v) == 1;
  });
  return attacker_all && defender_some;
}

}  // namespace pipecalc
