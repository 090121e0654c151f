#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pipecalc/pipeline.hpp"

namespace pipecalc {

enum class Outcome { Unchanged, StrictIncrease };

std::string to_string(Outcome outcome);

/// Effect of an admissible multiplier on throughput, together with the two
/// bottleneck predicates that characterise it.
struct PerturbationClassification {
  Outcome outcome = Outcome::Unchanged;
  Rational before;
  Rational after;
  /// Some original bottleneck keeps factor exactly 1.
  bool some_bottleneck_unimproved = false;
  /// Every original bottleneck has factor > 1.
  bool all_bottlenecks_improved = false;
  /// Earliest bottleneck with factor 1, when the outcome is Unchanged.
  std::optional<StageId> witness;
};

/// Whether the bottleneck set survives the perturbation, with the two
/// conditions that decide it computed on their own.
struct PreservationReport {
  bool preserved = false;
  /// All original bottlenecks share one factor.
  bool equal_bottleneck_factors = false;
  /// Every perturbed bottleneck value is below every perturbed non-bottleneck
  /// value. Vacuously true when every stage is a bottleneck.
  bool bottlenecks_stay_below = false;
  bool below_condition_vacuous = false;
  std::optional<Rational> common_factor;
};

struct MigrationDecomposition {
  std::vector<StageId> departed;  // in B(p), not in B(perturbed)
  std::vector<StageId> entered;   // in B(perturbed), not in B(p)

  bool empty() const noexcept { return departed.empty() && entered.empty(); }
};

/// Compares perturbed throughput with the original and evaluates both
/// bottleneck predicates over the original bottleneck set. Throws
/// InternalVerificationError if outcome and predicates disagree.
PerturbationClassification classify(const Pipeline& p, const Multiplier& a);

PreservationReport preservation_report(const Pipeline& p, const Multiplier& a);

MigrationDecomposition migration_decomposition(const Pipeline& p, const Multiplier& a);

struct Counterexample {
  std::string check;
  std::string detail;
};

struct CharacterizationVerdict {
  std::vector<Counterexample> counterexamples;

  bool pass() const noexcept { return counterexamples.empty(); }
};

/// What the production code claims for one (pipeline, multiplier) pair.
struct CharacterizationClaims {
  PerturbationClassification classification;
  PreservationReport preservation;
  MigrationDecomposition migration;
  bool migrated = false;
};

/// Gathers claims from classify, preservation_report, migration_decomposition
/// and migration_occurred.
CharacterizationClaims collect_claims(const Pipeline& p, const Multiplier& a);

/// Recomputes everything from the definitions with the brute-force oracle and
/// checks each claim and each biconditional. Any mismatch is reported with
/// the full intermediate state.
CharacterizationVerdict verify_claims(const Pipeline& p, const Multiplier& a,
                                      const CharacterizationClaims& claims);

CharacterizationVerdict verify_characterizations(const Pipeline& p, const Multiplier& a);

}  // namespace pipecalc
