#include "pipecalc/pipeline.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pipecalc {
namespace {

std::string join_messages(const std::vector<Violation>& violations) {
  std::ostringstream os;
  os << "invalid pipeline:";
  for (const auto& v : violations) {
    os << "\n  ";
    if (v.assumption != 0) os << "assumption " << v.assumption << ": ";
    os << v.message;
  }
  return os.str();
}

std::vector<Violation> stage_violations(const std::vector<Stage>& stages) {
  std::vector<Violation> out;
  if (stages.empty()) out.push_back({1, "stage set is empty"});
  std::set<StageId> seen;
  for (const auto& s : stages) {
    if (!seen.insert(s.id).second) {
      out.push_back({0, "duplicate stage id '" + s.id.str() + "'"});
    }
    if (!s.capacity.is_positive()) {
      out.push_back({2, "capacity of stage '" + s.id.str() + "' is " + s.capacity.str() +
                            ", must be strictly positive"});
    }
  }
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(join_messages(violations)), violations_(std::move(violations)) {}

StageId::StageId(std::string token) : token_(std::move(token)) {
  if (token_.empty()) throw std::invalid_argument("stage id must be nonempty");
}

Pipeline::Pipeline(std::vector<Stage> stages) : stages_(std::move(stages)) {
  if (auto violations = stage_violations(stages_); !violations.empty()) {
    throw ValidationError(std::move(violations));
  }
  for (std::size_t i = 0; i < stages_.size(); ++i) index_.emplace(stages_[i].id, i);
}

Pipeline::Pipeline(std::initializer_list<std::pair<const char*, Rational>> stages)
    : Pipeline([&] {
        std::vector<Stage> out;
        out.reserve(stages.size());
        for (const auto& [id, cap] : stages) out.push_back({StageId(id), cap});
        return out;
      }()) {}

std::size_t Pipeline::index_of(const StageId& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw std::out_of_range("unknown stage '" + id.str() + "'");
  return it->second;
}

const Rational& Pipeline::capacity(const StageId& id) const {
  return stages_[index_of(id)].capacity;
}

std::vector<StageId> Pipeline::ids() const {
  std::vector<StageId> out;
  out.reserve(stages_.size());
  for (const auto& s : stages_) out.push_back(s.id);
  return out;
}

bool operator==(const Pipeline& lhs, const Pipeline& rhs) {
  if (lhs.stages_.size() != rhs.stages_.size()) return false;
  for (std::size_t i = 0; i < lhs.stages_.size(); ++i) {
    if (lhs.stages_[i].id != rhs.stages_[i].id ||
        lhs.stages_[i].capacity != rhs.stages_[i].capacity) {
      return false;
    }
  }
  return true;
}

Multiplier::Multiplier(std::map<StageId, Rational> factors) : factors_(std::move(factors)) {
  for (const auto& [id, f] : factors_) {
    if (f < Rational(1)) {
      throw AdmissibilityError("factor for stage '" + id.str() + "' is " + f.str() +
                               ", admissible factors are >= 1");
    }
  }
}

Multiplier Multiplier::identity(const Pipeline& p) { return uniform(p, Rational(1)); }

Multiplier Multiplier::uniform(const Pipeline& p, const Rational& factor) {
  std::map<StageId, Rational> f;
  for (const auto& s : p.stages()) f.emplace(s.id, factor);
  return Multiplier(std::move(f));
}

Multiplier Multiplier::in_stage_order(const Pipeline& p, const std::vector<Rational>& factors) {
  if (factors.size() != p.size()) {
    throw AdmissibilityError("expected " + std::to_string(p.size()) + " factors, got " +
                             std::to_string(factors.size()));
  }
  std::map<StageId, Rational> f;
  for (std::size_t i = 0; i < factors.size(); ++i) f.emplace(p.stages()[i].id, factors[i]);
  return Multiplier(std::move(f));
}

const Rational& Multiplier::factor(const StageId& id) const {
  auto it = factors_.find(id);
  if (it == factors_.end()) {
    throw AdmissibilityError("multiplier has no factor for stage '" + id.str() + "'");
  }
  return it->second;
}

Multiplier Multiplier::with(const StageId& id, const Rational& factor) const {
  auto copy = factors_;
  copy.insert_or_assign(id, factor);
  return Multiplier(std::move(copy));
}

void check_admissible(const Pipeline& p, const Multiplier& a) {
  std::vector<std::string> problems;
  for (const auto& s : p.stages()) {
    if (!a.covers(s.id)) problems.push_back("missing factor for stage '" + s.id.str() + "'");
  }
  for (const auto& [id, f] : a.factors()) {
    if (!p.contains(id)) problems.push_back("factor for unknown stage '" + id.str() + "'");
  }
  if (problems.empty()) return;
  std::string msg = "multiplier domain does not match pipeline stages:";
  for (const auto& m : problems) msg += " " + m + ";";
  msg.pop_back();
  throw AdmissibilityError(msg);
}

Rational throughput(const Pipeline& p) {
  const auto& stages = p.stages();
  Rational best = stages.front().capacity;
  for (std::size_t i = 1; i < stages.size(); ++i) {
    if (stages[i].capacity < best) best = stages[i].capacity;
  }
  return best;
}

BottleneckReport bottleneck_report(const Pipeline& p) {
  BottleneckReport report{throughput(p), {}, {}};
  for (const auto& s : p.stages()) {
    (s.capacity == report.throughput ? report.bottlenecks : report.non_bottlenecks)
        .push_back(s.id);
  }
  return report;
}

Pipeline perturb(const Pipeline& p, const Multiplier& a) {
  check_admissible(p, a);
  std::vector<Stage> stages;
  stages.reserve(p.size());
  for (const auto& s : p.stages()) stages.push_back({s.id, a.factor(s.id) * s.capacity});
  return Pipeline(std::move(stages));
}

Rational perturbed_throughput(const Pipeline& p, const Multiplier& a) {
  check_admissible(p, a);
  std::optional<Rational> best;
  for (const auto& s : p.stages()) {
    Rational value = a.factor(s.id) * s.capacity;
    if (!best || value < *best) best = std::move(value);
  }
  return *best;
}

bool migration_occurred(const Pipeline& p, const Multiplier& a) {
  return !same_stage_set(bottleneck_report(p).bottlenecks,
                         bottleneck_report(perturb(p, a)).bottlenecks);
}

PipelineValidation validate_pipeline(const RawPipeline& raw) {
  PipelineValidation result;
  auto& out = result.violations;

  if (raw.stages.empty()) out.push_back({1, "stage set is empty"});

  std::set<std::string> ids;
  for (const auto& id : raw.stages) {
    if (id.empty()) {
      out.push_back({0, "stage id must be nonempty"});
    } else if (!ids.insert(id).second) {
      out.push_back({0, "duplicate stage id '" + id + "'"});
    }
  }

  std::map<std::string, Rational> caps;
  for (const auto& [id, cap] : raw.capacities) {
    if (!ids.contains(id)) {
      out.push_back({0, "capacity given for unknown stage '" + id + "'"});
      continue;
    }
    if (!caps.emplace(id, cap).second) {
      out.push_back({0, "capacity for stage '" + id + "' given more than once"});
      continue;
    }
    if (!cap.is_positive()) {
      out.push_back({2, "capacity of stage '" + id + "' is " + cap.str() +
                            ", must be strictly positive"});
    }
  }
  for (const auto& id : ids) {
    if (!caps.contains(id)) out.push_back({0, "no capacity for stage '" + id + "'"});
  }

  if (!out.empty()) return result;

  std::vector<Stage> stages;
  stages.reserve(raw.stages.size());
  for (const auto& id : raw.stages) stages.push_back({StageId(id), caps.at(id)});
  result.pipeline.emplace(std::move(stages));
  return result;
}

bool same_stage_set(std::vector<StageId> lhs, std::vector<StageId> rhs) {
  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  return lhs == rhs;
}

}  // namespace pipecalc
