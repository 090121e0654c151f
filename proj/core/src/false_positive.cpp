#include "pipecalc/false_positive.hpp"

#include <sstream>
#include <stdexcept>

#include "pipecalc/errors.hpp"

namespace pipecalc {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

HighPrecision to_high(const Rational& r) {
  return HighPrecision(r.numerator().get_str()) / HighPrecision(r.denominator().get_str());
}

void require_positive_rate(const Rational& rate) {
  if (!rate.is_positive()) throw DomainError("alert rate must be > 0, got " + rate.str());
}

void require_unit_interval(const Rational& v, const char* what) {
  if (v < 0 || v > 1) throw DomainError(std::string(what) + " must lie in [0,1], got " + v.str());
}

Rational interpolate(const PrecisionTable& t, const Rational& rate) {
  const auto& bp = t.breakpoints;
  if (rate < bp.front().first || rate > bp.back().first) {
    throw DomainError("rate " + rate.str() + " outside table span [" + bp.front().first.str() +
                      ", " + bp.back().first.str() + "]");
  }
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    const auto& [x0, y0] = bp[i];
    const auto& [x1, y1] = bp[i + 1];
    if (rate <= x1) return y0 + (y1 - y0) * (rate - x0) / (x1 - x0);
  }
  return bp.back().second;
}

}  // namespace

FixedFractionModel::FixedFractionModel(Rational false_positive_fraction,
                                       Rational investigation_capacity)
    : fraction_(std::move(false_positive_fraction)), capacity_(std::move(investigation_capacity)) {
  if (fraction_ < 0 || fraction_ >= 1) {
    throw DomainError("false-positive fraction must lie in [0,1), got " + fraction_.str());
  }
  if (!capacity_.is_positive()) {
    throw DomainError("investigation capacity must be > 0, got " + capacity_.str());
  }
}

Rational simple_useful(const Rational& rate, const FixedFractionModel& m) {
  require_positive_rate(rate);
  return (Rational(1) - m.false_positive_fraction()) * min(rate, m.investigation_capacity());
}

PlateauVerdict plateau_check(const FixedFractionModel& m, std::span<const Rational> rates) {
  for (const auto& r : rates) {
    if (!(r > m.investigation_capacity())) {
      throw PreconditionError("plateau sample " + r.str() + " is not above investigation capacity " +
                              m.investigation_capacity().str());
    }
  }
  PlateauVerdict v;
  v.common_value = (Rational(1) - m.false_positive_fraction()) * m.investigation_capacity();
  v.samples = rates.size();
  for (const auto& r : rates) {
    if (simple_useful(r, m) != v.common_value) v.mismatched_rates.push_back(r);
  }
  return v;
}

PrecisionFunction PrecisionFunction::constant(Rational value) {
  require_unit_interval(value, "constant precision");
  return PrecisionFunction(ConstantPrecision{std::move(value)});
}

PrecisionFunction PrecisionFunction::rational_decay(Rational k) {
  if (!k.is_positive()) throw DomainError("rational decay rate must be > 0, got " + k.str());
  return PrecisionFunction(RationalDecay{std::move(k)});
}

PrecisionFunction PrecisionFunction::exponential_decay(Rational k) {
  if (!k.is_positive()) throw DomainError("exponential decay rate must be > 0, got " + k.str());
  return PrecisionFunction(ExponentialDecay{std::move(k)});
}

PrecisionFunction PrecisionFunction::table(std::vector<std::pair<Rational, Rational>> breakpoints) {
  if (breakpoints.size() < 2) throw DomainError("precision table needs at least two breakpoints");
  for (std::size_t i = 0; i < breakpoints.size(); ++i) {
    const auto& [rate, precision] = breakpoints[i];
    if (!rate.is_positive()) throw DomainError("table rate must be > 0, got " + rate.str());
    require_unit_interval(precision, "table precision");
    if (i > 0 && !(breakpoints[i - 1].first < rate)) {
      throw DomainError("table rates must be strictly increasing");
    }
  }
  return PrecisionFunction(PrecisionTable{std::move(breakpoints)});
}

PrecisionFunction PrecisionFunction::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw DomainError("precision spec must look like family:params, got \"" + std::string(text) + "\"");
  }
  const auto family = text.substr(0, colon);
  const auto params = text.substr(colon + 1);
  auto number = [&](std::string_view s) {
    auto r = Rational::try_parse(s);
    if (!r) throw DomainError("bad number \"" + std::string(s) + "\" in precision spec");
    return *r;
  };
  if (family == "constant") return constant(number(params));
  if (family == "rational") return rational_decay(number(params));
  if (family == "exponential") return exponential_decay(number(params));
  if (family == "table") {
    std::vector<std::pair<Rational, Rational>> bp;
    std::size_t start = 0;
    while (start <= params.size()) {
      auto end = params.find(',', start);
      if (end == std::string_view::npos) end = params.size();
      const auto item = params.substr(start, end - start);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw DomainError("table entries must look like rate=precision");
      bp.emplace_back(number(item.substr(0, eq)), number(item.substr(eq + 1)));
      start = end + 1;
    }
    return table(std::move(bp));
  }
  throw DomainError("unknown precision family \"" + std::string(family) + "\"");
}

Rational PrecisionFunction::exact_at(const Rational& rate) const {
  require_positive_rate(rate);
  return std::visit(
      overloaded{
          [](const ConstantPrecision& c) { return c.value; },
          [&](const RationalDecay& d) { return Rational(1) / (Rational(1) + d.k * rate); },
          [](const ExponentialDecay&) -> Rational {
            throw std::logic_error("exponential precision has no exact value");
          },
          [&](const PrecisionTable& t) { return interpolate(t, rate); },
      },
      family_);
}

HighPrecision PrecisionFunction::approx_at(const Rational& rate) const {
  if (const auto* e = std::get_if<ExponentialDecay>(&family_)) {
    require_positive_rate(rate);
    return boost::multiprecision::exp(-to_high(e->k * rate));
  }
  return to_high(exact_at(rate));
}

void PrecisionFunction::validate_strictly_decreasing_above(const Rational& c_inv) const {
  std::visit(
      overloaded{
          [](const ConstantPrecision&) {
            throw PreconditionError("constant precision is not strictly decreasing");
          },
          [](const RationalDecay&) {},
          [](const ExponentialDecay&) {},
          [&](const PrecisionTable& t) {
            const auto& bp = t.breakpoints;
            if (!(bp.back().first > c_inv)) {
              throw PreconditionError("precision table ends at " + bp.back().first.str() +
                                      ", not above investigation capacity " + c_inv.str());
            }
            for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
              if (bp[i + 1].first > c_inv && !(bp[i].second > bp[i + 1].second)) {
                throw PreconditionError("precision table is not strictly decreasing between rates " +
                                        bp[i].first.str() + " and " + bp[i + 1].first.str());
              }
            }
          },
      },
      family_);
}

std::string PrecisionFunction::describe() const {
  return std::visit(
      overloaded{
          [](const ConstantPrecision& c) { return "constant:" + c.value.str(); },
          [](const RationalDecay& d) { return "rational:" + d.k.str(); },
          [](const ExponentialDecay& e) { return "exponential:" + e.k.str(); },
          [](const PrecisionTable& t) {
            std::string out = "table:";
            for (std::size_t i = 0; i < t.breakpoints.size(); ++i) {
              out += (i ? "," : "") + t.breakpoints[i].first.str() + "=" +
                     t.breakpoints[i].second.str();
            }
            return out;
          },
      },
      family_);
}

HighPrecision UsefulValue::approx() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return to_high(*r);
  return std::get<HighPrecision>(value_);
}

std::string UsefulValue::str() const {
  if (const auto* r = std::get_if<Rational>(&value_)) return r->str();
  return std::get<HighPrecision>(value_).str(36);
}

UsefulValue repaired_useful(const Rational& rate, const PrecisionFunction& p, const Rational& c_inv) {
  require_positive_rate(rate);
  if (!c_inv.is_positive()) throw DomainError("investigation capacity must be > 0, got " + c_inv.str());
  const Rational served = min(rate, c_inv);
  if (p.is_exact()) return UsefulValue(p.exact_at(rate) * served);
  return UsefulValue(p.approx_at(rate) * to_high(served));
}

DeclineVerdict decline_check(const PrecisionFunction& p, const Rational& c_inv,
                             std::span<const Rational> rates) {
  if (!c_inv.is_positive()) throw DomainError("investigation capacity must be > 0, got " + c_inv.str());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    if (!(rates[i] > c_inv)) {
      throw PreconditionError("decline sample " + rates[i].str() +
                              " is not above investigation capacity " + c_inv.str());
    }
    if (i > 0 && !(rates[i - 1] < rates[i])) {
      throw PreconditionError("decline samples must be strictly increasing");
    }
  }

  DeclineVerdict v;
  if (p.is_constant()) {
    v.mode = DeclineVerdict::Mode::Constant;
  } else {
    p.validate_strictly_decreasing_above(c_inv);
  }
  for (const auto& r : rates) v.values.push_back(repaired_useful(r, p, c_inv));

  for (std::size_t i = 0; i + 1 < rates.size(); ++i) {
    bool ok = false;
    if (v.mode == DeclineVerdict::Mode::Constant) {
      ok = v.values[i].exact() == v.values[i + 1].exact();
    } else if (const auto* e = std::get_if<ExponentialDecay>(&p.family())) {
      // Above c_inv both values share the factor c_inv, and exp is strictly
      // increasing, so the comparison reduces to the exponents.
      ok = e->k * rates[i] < e->k * rates[i + 1];
    } else {
      ok = v.values[i].exact() > v.values[i + 1].exact();
    }
    if (!ok) v.failures.push_back(i);
  }
  return v;
}

}  // namespace pipecalc
