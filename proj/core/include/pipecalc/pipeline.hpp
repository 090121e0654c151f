#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pipecalc/errors.hpp"
#include "pipecalc/rational.hpp"

namespace pipecalc {

/// Nonempty textual stage identifier.
class StageId {
 public:
  /// Throws std::invalid_argument for an empty token.
  explicit StageId(std::string token);

  const std::string& str() const noexcept { return token_; }

  friend bool operator==(const StageId&, const StageId&) = default;
  friend auto operator<=>(const StageId&, const StageId&) = default;

 private:
  std::string token_;
};

struct Stage {
  StageId id;
  Rational capacity;
};

/// Serial pipeline: a nonempty ordered list of uniquely named stages, each
/// with a strictly positive capacity. Immutable once built.
///
/// The stage order is kept for presentation and serialization only; no
/// computation depends on it.
class Pipeline {
 public:
  /// Throws ValidationError listing every violated rule.
  explicit Pipeline(std::vector<Stage> stages);
  Pipeline(std::initializer_list<std::pair<const char*, Rational>> stages);

  const std::vector<Stage>& stages() const noexcept { return stages_; }
  std::size_t size() const noexcept { return stages_.size(); }

  bool contains(const StageId& id) const { return index_.contains(id); }
  /// Position of `id` in stage order. Throws std::out_of_range.
  std::size_t index_of(const StageId& id) const;
  const Rational& capacity(const StageId& id) const;
  std::vector<StageId> ids() const;

  friend bool operator==(const Pipeline& lhs, const Pipeline& rhs);

 private:
  std::vector<Stage> stages_;
  std::map<StageId, std::size_t> index_;
};

/// Per-stage improvement factors, each at least one.
class Multiplier {
 public:
  /// Throws AdmissibilityError if any factor is below one.
  explicit Multiplier(std::map<StageId, Rational> factors);

  /// The all-ones multiplier over `p`'s stages.
  static Multiplier identity(const Pipeline& p);
  static Multiplier uniform(const Pipeline& p, const Rational& factor);
  /// Factors given in `p`'s stage order. Throws AdmissibilityError on a length
  /// mismatch.
  static Multiplier in_stage_order(const Pipeline& p, const std::vector<Rational>& factors);

  /// Throws AdmissibilityError if `id` is outside the domain.
  const Rational& factor(const StageId& id) const;
  const std::map<StageId, Rational>& factors() const noexcept { return factors_; }
  bool covers(const StageId& id) const { return factors_.contains(id); }

  /// Copy with the factor of `id` replaced.
  Multiplier with(const StageId& id, const Rational& factor) const;

  friend bool operator==(const Multiplier&, const Multiplier&) = default;

 private:
  std::map<StageId, Rational> factors_;
};

/// Throws AdmissibilityError unless `a`'s domain is exactly `p`'s stage set.
void check_admissible(const Pipeline& p, const Multiplier& a);

struct BottleneckReport {
  Rational throughput;
  std::vector<StageId> bottlenecks;      // stage order
  std::vector<StageId> non_bottlenecks;  // stage order
};

/// Minimum stage capacity.
Rational throughput(const Pipeline& p);

BottleneckReport bottleneck_report(const Pipeline& p);

/// Pipeline with every capacity scaled by its stage's factor.
Pipeline perturb(const Pipeline& p, const Multiplier& a);

/// min over stages of factor * capacity, without materialising the perturbed
/// pipeline.
Rational perturbed_throughput(const Pipeline& p, const Multiplier& a);

/// True iff the bottleneck set of perturb(p, a) differs from that of p.
bool migration_occurred(const Pipeline& p, const Multiplier& a);

/// Unvalidated pipeline description: an ordered id list plus capacities keyed
/// by id. Ids may repeat and capacities may be missing, extra or nonpositive;
/// validate_pipeline reports all of it.
struct RawPipeline {
  std::vector<std::string> stages;
  std::vector<std::pair<std::string, Rational>> capacities;
};

struct PipelineValidation {
  std::optional<Pipeline> pipeline;
  std::vector<Violation> violations;

  bool ok() const noexcept { return pipeline.has_value(); }
};

PipelineValidation validate_pipeline(const RawPipeline& raw);

/// Bottleneck set equality, ignoring order.
bool same_stage_set(std::vector<StageId> lhs, std::vector<StageId> rhs);

}  // namespace pipecalc
