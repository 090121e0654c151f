#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "pipecalc/rational.hpp"

namespace pipecalc {

/// 128-bit binary significand. Used only for the exponential precision family.
using HighPrecision = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<128, boost::multiprecision::digit_base_2>>;

/// Alert stream where a fixed fraction of alerts are false positives and
/// investigators clear at most `investigation_capacity` alerts per unit time.
class FixedFractionModel {
 public:
  /// Throws DomainError unless 0 <= fraction < 1 and capacity > 0.
  FixedFractionModel(Rational false_positive_fraction, Rational investigation_capacity);

  const Rational& false_positive_fraction() const noexcept { return fraction_; }
  const Rational& investigation_capacity() const noexcept { return capacity_; }

 private:
  Rational fraction_;
  Rational capacity_;
};

/// (1 - f) * min(rate, c_inv). Throws DomainError for rate <= 0.
Rational simple_useful(const Rational& rate, const FixedFractionModel& m);

struct PlateauVerdict {
  Rational common_value;  // (1 - f) * c_inv
  std::size_t samples = 0;
  std::vector<Rational> mismatched_rates;

  bool pass() const noexcept { return mismatched_rates.empty(); }
};

/// Evaluates simple_useful at every rate and checks it equals (1 - f) * c_inv.
/// Throws PreconditionError if any rate is at or below c_inv.
PlateauVerdict plateau_check(const FixedFractionModel& m, std::span<const Rational> rates);

struct ConstantPrecision {
  Rational value;
};
/// p(rate) = 1 / (1 + k * rate)
struct RationalDecay {
  Rational k;
};
/// p(rate) = exp(-k * rate)
struct ExponentialDecay {
  Rational k;
};
/// Linear interpolation between (rate, precision) breakpoints, undefined
/// outside the breakpoint span.
struct PrecisionTable {
  std::vector<std::pair<Rational, Rational>> breakpoints;
};

/// Fraction of alerts that are true positives, as a function of alert rate.
class PrecisionFunction {
 public:
  using Family = std::variant<ConstantPrecision, RationalDecay, ExponentialDecay, PrecisionTable>;

  /// Each factory validates its parameters and throws DomainError:
  /// constant in [0,1]; decay rates > 0; table breakpoints at least two,
  /// strictly increasing positive rates, precisions in [0,1].
  static PrecisionFunction constant(Rational value);
  static PrecisionFunction rational_decay(Rational k);
  static PrecisionFunction exponential_decay(Rational k);
  static PrecisionFunction table(std::vector<std::pair<Rational, Rational>> breakpoints);

  /// Parses "constant:F", "rational:K", "exponential:K" or
  /// "table:R1=P1,R2=P2,...". Throws DomainError.
  static PrecisionFunction parse(std::string_view text);

  const Family& family() const noexcept { return family_; }
  bool is_constant() const noexcept { return std::holds_alternative<ConstantPrecision>(family_); }
  /// False only for the exponential family.
  bool is_exact() const noexcept { return !std::holds_alternative<ExponentialDecay>(family_); }

  /// Exact value. Throws std::logic_error for the exponential family and
  /// DomainError outside a table's span or for rate <= 0.
  Rational exact_at(const Rational& rate) const;
  HighPrecision approx_at(const Rational& rate) const;

  /// Throws PreconditionError unless the function is strictly decreasing on
  /// (c_inv, infinity). For a table this means every segment that reaches
  /// above c_inv slopes down and the span extends above c_inv.
  void validate_strictly_decreasing_above(const Rational& c_inv) const;

  std::string describe() const;

 private:
  explicit PrecisionFunction(Family family) : family_(std::move(family)) {}
  Family family_;
};

/// Useful throughput under a rate-dependent precision: exact for the
/// rational families, HighPrecision for the exponential one.
class UsefulValue {
 public:
  explicit UsefulValue(Rational exact) : value_(std::move(exact)) {}
  explicit UsefulValue(HighPrecision approx) : value_(std::move(approx)) {}

  bool is_exact() const noexcept { return std::holds_alternative<Rational>(value_); }
  /// Throws std::bad_variant_access for inexact values.
  const Rational& exact() const { return std::get<Rational>(value_); }
  HighPrecision approx() const;
  /// Exact values as "n/d"; approximations with 36 significant digits.
  std::string str() const;

 private:
  std::variant<Rational, HighPrecision> value_;
};

/// p(rate) * min(rate, c_inv). Throws DomainError for rate <= 0 or c_inv <= 0.
UsefulValue repaired_useful(const Rational& rate, const PrecisionFunction& p,
                            const Rational& c_inv);

struct DeclineVerdict {
  enum class Mode { StrictDecline, Constant };
  Mode mode = Mode::StrictDecline;
  std::vector<UsefulValue> values;
  /// Indices i where values[i] > values[i+1] failed (or, in constant mode,
  /// where values[i] != values[i+1]).
  std::vector<std::size_t> failures;

  bool pass() const noexcept { return failures.empty(); }
};

/// Checks that useful throughput strictly declines across strictly increasing
/// rates above c_inv. For a constant precision it checks exact constancy
/// instead. Throws PreconditionError on unsorted or non-saturated rates, or
/// a non-constant precision that is not strictly decreasing above c_inv.
DeclineVerdict decline_check(const PrecisionFunction& p, const Rational& c_inv,
                             std::span<const Rational> rates);

}  // namespace pipecalc
