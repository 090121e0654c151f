#include "pipecalc/characterization.hpp"

#include <algorithm>
#include <sstream>

#include "pipecalc/oracle.hpp"

namespace pipecalc {
namespace {

std::vector<StageId> difference(const std::vector<StageId>& from, const std::vector<StageId>& remove) {
  std::vector<StageId> out;
  for (const auto& id : from) {
    if (std::find(remove.begin(), remove.end(), id) == remove.end()) out.push_back(id);
  }
  return out;
}

std::string list(const std::vector<StageId>& ids) {
  std::string out = "{";
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? "," : "") + ids[i].str();
  return out + "}";
}

std::string list(const std::vector<Rational>& values) {
  std::string out = "(";
  for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + values[i].str();
  return out + ")";
}

}  // namespace

std::string to_string(Outcome outcome) {
  return outcome == Outcome::Unchanged ? "unchanged" : "strict-increase";
}

PerturbationClassification classify(const Pipeline& p, const Multiplier& a) {
  check_admissible(p, a);
  PerturbationClassification c;
  c.before = throughput(p);
  c.after = perturbed_throughput(p, a);

  const auto bottlenecks = bottleneck_report(p).bottlenecks;
  c.some_bottleneck_unimproved = std::any_of(bottlenecks.begin(), bottlenecks.end(),
                                             [&](const StageId& v) { return a.factor(v) == 1; });
  c.all_bottlenecks_improved = std::all_of(bottlenecks.begin(), bottlenecks.end(),
                                           [&](const StageId& v) { return a.factor(v) > 1; });

  if (c.after < c.before) {
    throw InternalVerificationError("perturbed throughput " + c.after.str() +
                                    " fell below original " + c.before.str());
  }
  c.outcome = c.after == c.before ? Outcome::Unchanged : Outcome::StrictIncrease;

  const bool unchanged = c.outcome == Outcome::Unchanged;
  if (unchanged != c.some_bottleneck_unimproved || unchanged == c.all_bottlenecks_improved) {
    throw InternalVerificationError("classification disagrees with bottleneck predicates");
  }
  if (unchanged) {
    for (const auto& v : bottlenecks) {
      if (a.factor(v) == 1) {
        c.witness = v;
        break;
      }
    }
  }
  return c;
}

PreservationReport preservation_report(const Pipeline& p, const Multiplier& a) {
  check_admissible(p, a);
  const auto original = bottleneck_report(p);
  const auto perturbed = bottleneck_report(perturb(p, a));

  PreservationReport r;
  r.preserved = same_stage_set(original.bottlenecks, perturbed.bottlenecks);

  const Rational& first = a.factor(original.bottlenecks.front());
  r.equal_bottleneck_factors =
      std::all_of(original.bottlenecks.begin(), original.bottlenecks.end(),
                  [&](const StageId& u) { return a.factor(u) == first; });
  if (r.equal_bottleneck_factors) r.common_factor = first;

  r.below_condition_vacuous = original.non_bottlenecks.empty();
  r.bottlenecks_stay_below = true;
  for (const auto& u : original.bottlenecks) {
    const Rational bu = a.factor(u) * p.capacity(u);
    for (const auto& w : original.non_bottlenecks) {
      if (!(bu < a.factor(w) * p.capacity(w))) r.bottlenecks_stay_below = false;
    }
  }

  if (r.preserved != (r.equal_bottleneck_factors && r.bottlenecks_stay_below)) {
    throw InternalVerificationError("bottleneck preservation disagrees with its conditions");
  }
  return r;
}

MigrationDecomposition migration_decomposition(const Pipeline& p, const Multiplier& a) {
  const auto before = bottleneck_report(p).bottlenecks;
  const auto after = bottleneck_report(perturb(p, a)).bottlenecks;
  return {difference(before, after), difference(after, before)};
}

CharacterizationClaims collect_claims(const Pipeline& p, const Multiplier& a) {
  return {classify(p, a), preservation_report(p, a), migration_decomposition(p, a),
          migration_occurred(p, a)};
}

CharacterizationVerdict verify_claims(const Pipeline& p, const Multiplier& a,
                                      const CharacterizationClaims& claims) {
  check_admissible(p, a);
  CharacterizationVerdict verdict;

  const auto caps = oracle::capacities(p);
  const auto prods = oracle::products(p, a);
  const auto b_idx = oracle::minimisers(caps);
  const auto bp_idx = oracle::minimisers(prods);
  const Rational t0 = oracle::minimum(caps);
  const Rational t1 = oracle::minimum(prods);
  const auto b = oracle::ids_at(p, b_idx);
  const auto bp = oracle::ids_at(p, bp_idx);

  std::vector<Rational> factors;
  for (const auto& s : p.stages()) factors.push_back(a.factor(s.id));

  auto state = [&] {
    const auto& c = claims.classification;
    std::ostringstream os;
    os << "capacities=" << list(caps) << " factors=" << list(factors) << " oracle: T=" << t0
       << " T'=" << t1 << " B=" << list(b) << " B'=" << list(bp) << " claimed: T=" << c.before
       << " T'=" << c.after << " outcome=" << to_string(c.outcome)
       << " some_unimproved=" << c.some_bottleneck_unimproved
       << " all_improved=" << c.all_bottlenecks_improved
       << " preserved=" << claims.preservation.preserved
       << " cond_i=" << claims.preservation.equal_bottleneck_factors
       << " cond_ii=" << claims.preservation.bottlenecks_stay_below
       << " departed=" << list(claims.migration.departed)
       << " entered=" << list(claims.migration.entered) << " migrated=" << claims.migrated;
    return os.str();
  };
  auto expect = [&](bool ok, const char* check) {
    if (!ok) verdict.counterexamples.push_back({check, state()});
  };

  // Foundations: the minimum exists, is attained, and never drops.
  expect(!b.empty(), "bottleneck-existence");
  expect(std::all_of(b_idx.begin(), b_idx.end(), [&](auto i) { return caps[i] == t0; }),
         "bottleneck-existence");
  expect(claims.classification.before == t0, "throughput");
  expect(claims.classification.after == t1, "normal-form");
  expect(t1 >= t0, "non-decrease");

  bool oracle_some_unit = false;
  bool oracle_all_above = true;
  for (auto i : b_idx) {
    if (factors[i] == 1) oracle_some_unit = true;
    if (!(factors[i] > 1)) oracle_all_above = false;
  }

  const auto& c = claims.classification;
  expect((t1 == t0) == oracle_some_unit, "invariance");
  expect((c.outcome == Outcome::Unchanged) == (t1 == t0), "invariance");
  expect(c.some_bottleneck_unimproved == oracle_some_unit, "invariance");
  expect((t1 > t0) == oracle_all_above, "strict-increase");
  expect((c.outcome == Outcome::StrictIncrease) == (t1 > t0), "strict-increase");
  expect(c.all_bottlenecks_improved == oracle_all_above, "strict-increase");
  if (c.outcome == Outcome::Unchanged) {
    const bool ok = c.witness && std::find(b.begin(), b.end(), *c.witness) != b.end() &&
                    a.factor(*c.witness) == 1;
    expect(ok, "invariance-witness");
  } else {
    expect(!c.witness, "invariance-witness");
  }

  const bool oracle_preserved = same_stage_set(b, bp);
  bool oracle_equal = true;
  for (auto i : b_idx) oracle_equal = oracle_equal && factors[i] == factors[b_idx.front()];
  bool oracle_below = true;
  for (auto i : b_idx) {
    for (std::size_t j = 0; j < caps.size(); ++j) {
      const bool is_bottleneck = std::find(b_idx.begin(), b_idx.end(), j) != b_idx.end();
      if (!is_bottleneck && !(prods[i] < prods[j])) oracle_below = false;
    }
  }
  const auto& pr = claims.preservation;
  expect(oracle_preserved == (oracle_equal && oracle_below), "preservation");
  expect(pr.preserved == oracle_preserved, "preservation");
  expect(pr.equal_bottleneck_factors == oracle_equal, "preservation");
  expect(pr.bottlenecks_stay_below == oracle_below, "preservation");
  expect(pr.below_condition_vacuous == (b.size() == caps.size()), "preservation");
  expect(pr.common_factor.has_value() == oracle_equal, "preservation");

  std::vector<StageId> departed, entered;
  for (const auto& v : b) {
    if (std::find(bp.begin(), bp.end(), v) == bp.end()) departed.push_back(v);
  }
  for (const auto& v : bp) {
    if (std::find(b.begin(), b.end(), v) == b.end()) entered.push_back(v);
  }
  const bool oracle_migrated = !oracle_preserved;
  expect(oracle_migrated == (!departed.empty() || !entered.empty()), "migration");
  expect(claims.migrated == oracle_migrated, "migration");
  expect(same_stage_set(claims.migration.departed, departed) &&
             same_stage_set(claims.migration.entered, entered),
         "migration");
  expect(claims.migration.empty() == !claims.migrated, "migration");

  return verdict;
}

CharacterizationVerdict verify_characterizations(const Pipeline& p, const Multiplier& a) {
  return verify_claims(p, a, collect_claims(p, a));
}

}  // namespace pipecalc
