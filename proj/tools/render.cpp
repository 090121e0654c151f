#include "render.hpp"

namespace pipecalc::cli {

Json stage_list(const std::vector<StageId>& ids) {
  Json out = Json::array();
  for (const auto& id : ids) out.push_back(id.str());
  return out;
}

Json capacities(const Pipeline& p) {
  Json out = Json::array();
  for (const auto& s : p.stages()) out.push_back({{"id", s.id.str()}, {"capacity", s.capacity.str()}});
  return out;
}

Json factors(const Pipeline& p, const Multiplier& a) {
  Json out = Json::object();
  for (const auto& s : p.stages()) out[s.id.str()] = a.factor(s.id).str();
  return out;
}

Json to_json(const BottleneckReport& r) {
  return {{"throughput", r.throughput.str()},
          {"bottlenecks", stage_list(r.bottlenecks)},
          {"non_bottlenecks", stage_list(r.non_bottlenecks)}};
}

Json to_json(const PerturbationClassification& c) {
  return {{"outcome", to_string(c.outcome)},
          {"throughput_before", c.before.str()},
          {"throughput_after", c.after.str()},
          {"some_bottleneck_unimproved", c.some_bottleneck_unimproved},
          {"all_bottlenecks_improved", c.all_bottlenecks_improved},
          {"witness", c.witness ? Json(c.witness->str()) : Json()}};
}

Json to_json(const PreservationReport& r) {
  return {{"preserved", r.preserved},
          {"equal_bottleneck_factors", r.equal_bottleneck_factors},
          {"bottlenecks_stay_below", r.bottlenecks_stay_below},
          {"below_condition_vacuous", r.below_condition_vacuous},
          {"common_factor", r.common_factor ? Json(r.common_factor->str()) : Json()}};
}

Json to_json(const MigrationDecomposition& m, bool occurred) {
  return {{"occurred", occurred}, {"departed", stage_list(m.departed)}, {"entered", stage_list(m.entered)}};
}

Json to_json(const RatioReport& r) {
  return {{"baseline_ratio", r.baseline_ratio.str()},
          {"perturbed_ratio", r.perturbed_ratio.str()},
          {"attacker_gain", r.attacker_gain.str()},
          {"defender_gain", r.defender_gain.str()},
          {"favours_attacker", r.favours_attacker}};
}

Json to_json(const PlateauVerdict& v) {
  Json mismatched = Json::array();
  for (const auto& r : v.mismatched_rates) mismatched.push_back(r.str());
  return {{"pass", v.pass()},
          {"common_value", v.common_value.str()},
          {"samples", v.samples},
          {"mismatched_rates", std::move(mismatched)}};
}

Json to_json(const DeclineVerdict& v) {
  Json values = Json::array();
  for (const auto& u : v.values) values.push_back(u.str());
  return {{"pass", v.pass()},
          {"mode", v.mode == DeclineVerdict::Mode::Constant ? "constant" : "strict-decline"},
          {"exact", v.values.empty() || v.values.front().is_exact()},
          {"values", std::move(values)},
          {"failures", v.failures}};
}

Json to_json(const Pipeline& p, const AllocationResult& r) {
  return {{"factors", factors(p, r.multiplier)},
          {"achieved_throughput", r.achieved_throughput.str()},
          {"spent", r.spent.str()},
          {"cap_binding", r.cap_binding}};
}

Json to_json(const HarnessVerdict& v) {
  Json tallies = Json::object();
  for (const auto& [name, t] : v.tallies) {
    tallies[name] = {{"checked", t.checked}, {"violations", t.violations}};
  }
  Json counterexamples = Json::array();
  for (const auto& c : v.counterexamples) {
    counterexamples.push_back({{"check", c.check}, {"seed", c.seed}, {"index", c.index}, {"detail", c.detail}});
  }
  return {{"pass", v.pass()},
          {"seed", v.seed},
          {"count", v.instance_count},
          {"tied_instances", v.tied_instances},
          {"unit_factor_instances", v.unit_factor_instances},
          {"total_violations", v.total_violations()},
          {"tallies", std::move(tallies)},
          {"counterexamples", std::move(counterexamples)}};
}

std::string join(const std::vector<StageId>& ids) {
  if (ids.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) out += (i ? ", " : "") + ids[i].str();
  return out;
}

std::string yes_no(bool value) { return value ? "yes" : "no"; }

}  // namespace pipecalc::cli
