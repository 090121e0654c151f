#pragma once

#include <map>
#include <optional>
#include <vector>

#include "pipecalc/pipeline.hpp"

namespace pipecalc {

/// Stages whose factor is pinned to one because a human must perform them,
/// optionally relaxed to a per-stage assist bound.
struct AuthoritySpec {
  std::vector<StageId> human_stages;
  /// When present, keyed exactly by human_stages, every value >= 1.
  std::optional<std::map<StageId, Rational>> assist_bound;

  friend bool operator==(const AuthoritySpec&, const AuthoritySpec&) = default;
};

/// Throws ValidationError if a human stage is unknown to `p` or repeated, or
/// if the assist bounds are keyed differently from the human stages or go
/// below one.
void validate_authority(const Pipeline& p, const AuthoritySpec& h);

/// Minimum capacity over the human stages; no multiplier that leaves them at
/// factor one can push throughput past it. Throws UndefinedCeilingError when
/// there are no human stages.
Rational ceiling(const Pipeline& p, const AuthoritySpec& h);

/// True iff every human stage has factor exactly one.
bool is_h_admissible(const Multiplier& a, const AuthoritySpec& h);

/// Factor applied to every machine stage by tightness_witness:
/// ceil(ceiling / min machine capacity) + 1. Empty when all stages are human.
std::optional<Rational> machine_acceleration(const Pipeline& p, const AuthoritySpec& h);

/// Multiplier that attains the ceiling exactly: one on human stages, the
/// machine_acceleration factor elsewhere (identity when every stage is human).
Multiplier tightness_witness(const Pipeline& p, const AuthoritySpec& h);

/// min over human stages of assist_bound * capacity. An upper bound only; no
/// tightness claim is made. Throws ConfigurationError without assist bounds.
Rational generalized_ceiling(const Pipeline& p, const AuthoritySpec& h);

/// True iff human-stage factors stay within their assist bounds.
bool within_assist_bounds(const Multiplier& a, const AuthoritySpec& h);

}  // namespace pipecalc
