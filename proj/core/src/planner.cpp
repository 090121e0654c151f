#include "pipecalc/planner.hpp"

#include <optional>

namespace pipecalc {
namespace {

Rational target_cost(const Pipeline& p, const CostModel& c, const Rational& target) {
  Rational total;
  for (const auto& s : p.stages()) {
    if (s.capacity < target) total += c.unit_cost.at(s.id) * (target / s.capacity - 1);
  }
  return total;
}

}  // namespace

CostModel CostModel::uniform(const Pipeline& p, const Rational& unit_cost, const Rational& budget) {
  CostModel c{{}, budget};
  for (const auto& s : p.stages()) c.unit_cost.emplace(s.id, unit_cost);
  return c;
}

void validate_cost_model(const Pipeline& p, const CostModel& c) {
  std::vector<Violation> out;
  for (const auto& s : p.stages()) {
    if (!c.unit_cost.contains(s.id)) out.push_back({0, "no unit cost for stage '" + s.id.str() + "'"});
  }
  for (const auto& [id, u] : c.unit_cost) {
    if (!p.contains(id)) out.push_back({0, "unit cost for unknown stage '" + id.str() + "'"});
    if (!u.is_positive()) {
      out.push_back({0, "unit cost for '" + id.str() + "' is " + u.str() + ", must be > 0"});
    }
  }
  if (c.budget < 0) out.push_back({0, "budget is " + c.budget.str() + ", must be >= 0"});
  if (!out.empty()) throw ValidationError(std::move(out));
}

Rational allocation_cost(const CostModel& c, const Multiplier& a) {
  Rational total;
  for (const auto& [id, f] : a.factors()) total += c.unit_cost.at(id) * (f - 1);
  return total;
}

AllocationResult trivial_allocation(const Pipeline& p, const CostModel& c) {
  validate_cost_model(p, c);
  const auto report = bottleneck_report(p);
  if (report.bottlenecks.size() != 1) {
    throw TiedBottleneckError(std::to_string(report.bottlenecks.size()) +
                              " stages tie for the bottleneck; improving only one leaves "
                              "throughput unchanged, use the max-min allocator");
  }
  const StageId& b = report.bottlenecks.front();
  const Rational& unit = c.unit_cost.at(b);

  Rational factor = Rational(1) + c.budget / unit;
  bool capped = false;
  if (!report.non_bottlenecks.empty()) {
    Rational next = p.capacity(report.non_bottlenecks.front());
    for (const auto& v : report.non_bottlenecks) next = min(next, p.capacity(v));
    const Rational limit = next / report.throughput;
    if (factor > limit) {
      factor = limit;
      capped = true;
    }
  }

  Multiplier a = Multiplier::identity(p).with(b, factor);
  Rational achieved = perturbed_throughput(p, a);
  return {std::move(a), std::move(achieved), (factor - 1) * unit, capped};
}

Multiplier cost_minimal_profile(const Pipeline& p, const Rational& target) {
  std::map<StageId, Rational> f;
  for (const auto& s : p.stages()) f.emplace(s.id, max(Rational(1), target / s.capacity));
  return Multiplier(std::move(f));
}

AllocationResult maxmin_allocation(const Pipeline& p, const CostModel& c, const Rational& tolerance) {
  if (!tolerance.is_positive()) {
    throw ParameterError("tolerance must be > 0, got " + tolerance.str());
  }
  validate_cost_model(p, c);

  // Lattice spacing: the largest power of two not above tolerance / 2.
  const Rational half_tol = tolerance / 2;
  Rational step(1);
  while (step > half_tol) step /= 2;
  while (step * 2 <= half_tol) step *= 2;

  const Rational base = throughput(p);
  std::optional<Rational> cheapest;
  for (const auto& [id, u] : c.unit_cost) {
    if (!cheapest || u < *cheapest) cheapest = u;
  }
  // Every stage at the original minimum must reach t, so
  // cheapest * (t / base - 1) <= budget bounds t from above.
  const Rational upper = base * (Rational(1) + c.budget / *cheapest);

  // Largest j in [0, n] with cost(base + j * step) <= budget; j = 0 is free.
  mpz_class lo = 0;
  mpz_class hi = ((upper - base) / step).ceil();
  auto at = [&](const mpz_class& j) { return base + Rational(j, mpz_class(1)) * step; };
  if (target_cost(p, c, at(hi)) <= c.budget) {
    lo = hi;
  }
  while (hi - lo > 1) {
    const mpz_class mid = (lo + hi) / 2;
    (target_cost(p, c, at(mid)) <= c.budget ? lo : hi) = mid;
  }

  const Rational target = at(lo);
  Multiplier a = cost_minimal_profile(p, target);
  Rational achieved = perturbed_throughput(p, a);
  Rational spent = allocation_cost(c, a);
  return {std::move(a), std::move(achieved), std::move(spent), false};
}

}  // namespace pipecalc
