#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pipecalc/adversarial.hpp"
#include "pipecalc/characterization.hpp"
#include "pipecalc/false_positive.hpp"
#include "pipecalc/harness.hpp"
#include "pipecalc/planner.hpp"

// Structured report fragments. Every exact quantity is rendered as "n/d" text.
namespace pipecalc::cli {

using Json = nlohmann::ordered_json;

Json stage_list(const std::vector<StageId>& ids);
Json capacities(const Pipeline& p);
/// Factors keyed by stage id, in stage order.
Json factors(const Pipeline& p, const Multiplier& a);

Json to_json(const BottleneckReport& r);
Json to_json(const PerturbationClassification& c);
Json to_json(const PreservationReport& r);
Json to_json(const MigrationDecomposition& m, bool occurred);
Json to_json(const RatioReport& r);
Json to_json(const PlateauVerdict& v);
Json to_json(const DeclineVerdict& v);
Json to_json(const Pipeline& p, const AllocationResult& r);
Json to_json(const HarnessVerdict& v);

std::string join(const std::vector<StageId>& ids);
std::string yes_no(bool value);

}  // namespace pipecalc::cli
