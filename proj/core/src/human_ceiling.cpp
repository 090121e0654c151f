#include "pipecalc/human_ceiling.hpp"

#include <algorithm>
#include <set>

namespace pipecalc {
namespace {

void require_nonempty(const AuthoritySpec& h) {
  if (h.human_stages.empty()) {
    throw UndefinedCeilingError("human ceiling is undefined for an empty human stage set");
  }
}

bool is_human(const AuthoritySpec& h, const StageId& id) {
  return std::find(h.human_stages.begin(), h.human_stages.end(), id) != h.human_stages.end();
}

}  // namespace

void validate_authority(const Pipeline& p, const AuthoritySpec& h) {
  std::vector<Violation> out;
  std::set<StageId> seen;
  for (const auto& id : h.human_stages) {
    if (!p.contains(id)) out.push_back({0, "human stage '" + id.str() + "' is not a pipeline stage"});
    if (!seen.insert(id).second) out.push_back({0, "human stage '" + id.str() + "' listed twice"});
  }
  if (h.assist_bound) {
    for (const auto& [id, beta] : *h.assist_bound) {
      if (!seen.contains(id)) {
        out.push_back({0, "assist bound for non-human stage '" + id.str() + "'"});
      }
      if (beta < 1) {
        out.push_back({0, "assist bound for '" + id.str() + "' is " + beta.str() + ", must be >= 1"});
      }
    }
    for (const auto& id : seen) {
      if (!h.assist_bound->contains(id)) {
        out.push_back({0, "no assist bound for human stage '" + id.str() + "'"});
      }
    }
  }
  if (!out.empty()) throw ValidationError(std::move(out));
}

Rational ceiling(const Pipeline& p, const AuthoritySpec& h) {
  require_nonempty(h);
  validate_authority(p, h);
  Rational best = p.capacity(h.human_stages.front());
  for (const auto& id : h.human_stages) best = min(best, p.capacity(id));
  return best;
}

bool is_h_admissible(const Multiplier& a, const AuthoritySpec& h) {
  return std::all_of(h.human_stages.begin(), h.human_stages.end(),
                     [&](const StageId& id) { return a.factor(id) == 1; });
}

std::optional<Rational> machine_acceleration(const Pipeline& p, const AuthoritySpec& h) {
  const Rational cap = ceiling(p, h);
  std::optional<Rational> machine_min;
  for (const auto& s : p.stages()) {
    if (is_human(h, s.id)) continue;
    if (!machine_min || s.capacity < *machine_min) machine_min = s.capacity;
  }
  if (!machine_min) return std::nullopt;
  const mpz_class n = (cap / *machine_min).ceil() + 1;
  return Rational(n, mpz_class(1));
}

Multiplier tightness_witness(const Pipeline& p, const AuthoritySpec& h) {
  const auto n = machine_acceleration(p, h);
  if (!n) return Multiplier::identity(p);
  std::map<StageId, Rational> f;
  for (const auto& s : p.stages()) f.emplace(s.id, is_human(h, s.id) ? Rational(1) : *n);
  return Multiplier(std::move(f));
}

Rational generalized_ceiling(const Pipeline& p, const AuthoritySpec& h) {
  require_nonempty(h);
  if (!h.assist_bound) {
    throw ConfigurationError("generalized ceiling needs assist bounds for every human stage");
  }
  validate_authority(p, h);
  std::optional<Rational> best;
  for (const auto& id : h.human_stages) {
    Rational v = h.assist_bound->at(id) * p.capacity(id);
    if (!best || v < *best) best = std::move(v);
  }
  return *best;
}

bool within_assist_bounds(const Multiplier& a, const AuthoritySpec& h) {
  return std::all_of(h.human_stages.begin(), h.human_stages.end(), [&](const StageId& id) {
    const Rational bound = h.assist_bound ? h.assist_bound->at(id) : Rational(1);
    return a.factor(id) <= bound;
  });
}

}  // namespace pipecalc
