#include "pipecalc/document.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pipecalc {
namespace {

using nlohmann::json;

class Collector {
 public:
  void add(int assumption, std::string message) {
    violations_.push_back({assumption, std::move(message)});
  }
  void add(std::string message) { add(0, std::move(message)); }
  void append(const std::vector<Violation>& more) {
    violations_.insert(violations_.end(), more.begin(), more.end());
  }
  bool empty() const { return violations_.empty(); }
  [[noreturn]] void raise() { throw ValidationError(std::move(violations_)); }

 private:
  std::vector<Violation> violations_;
};

std::optional<Rational> number(const json& j, const std::string& where, Collector& errs) {
  if (j.is_string()) {
    if (auto r = Rational::try_parse(j.get<std::string>())) return r;
    errs.add(where + ": \"" + j.get<std::string>() + "\" is not an exact number");
    return std::nullopt;
  }
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned() && j.get<std::uint64_t>() <= INT64_MAX) {
    return Rational(static_cast<std::int64_t>(j.get<std::uint64_t>()));
  }
  errs.add(where + ": expected an integer, decimal or fraction string");
  return std::nullopt;
}

const json* member(const json& obj, const char* key, json::value_t type, const std::string& where,
                   Collector& errs, bool required = true) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) errs.add(where + ": missing \"" + key + "\"");
    return nullptr;
  }
  const bool ok = it->type() == type;
  if (!ok) {
    errs.add(where + "." + key + ": wrong type");
    return nullptr;
  }
  return &*it;
}

std::optional<StageId> stage_ref(const json& j, const std::string& where, const Pipeline& p,
                                 Collector& errs) {
  if (!j.is_string() || j.get<std::string>().empty()) {
    errs.add(where + ": expected a stage id");
    return std::nullopt;
  }
  StageId id(j.get<std::string>());
  if (!p.contains(id)) {
    errs.add(where + ": unknown stage '" + id.str() + "'");
    return std::nullopt;
  }
  return id;
}

}  // namespace

const Multiplier& PipelineDocument::scenario(const std::string& scenario_name) const {
  auto it = scenarios.find(scenario_name);
  if (it != scenarios.end()) return it->second;
  std::string known;
  for (const auto& [n, _] : scenarios) known += (known.empty() ? "" : ", ") + n;
  throw ConfigurationError("no scenario named '" + scenario_name + "' (available: " +
                           (known.empty() ? "none" : known) + ")");
}

PipelineDocument parse_document(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DocumentError(std::string("malformed document: ") + e.what());
  }
  Collector errs;
  if (!root.is_object()) {
    errs.add("document root must be an object");
    errs.raise();
  }

  std::string version;
  if (const auto* v = member(root, "format_version", json::value_t::string, "document", errs)) {
    version = v->get<std::string>();
    if (version != kDocumentFormatVersion) {
      errs.add("unsupported format_version \"" + version + "\" (expected \"" +
               std::string(kDocumentFormatVersion) + "\")");
    }
  }

  std::string name;
  RawPipeline raw;
  const auto* pj = member(root, "pipeline", json::value_t::object, "document", errs);
  if (pj) {
    if (const auto* n = member(*pj, "name", json::value_t::string, "pipeline", errs)) {
      name = n->get<std::string>();
    }
    if (const auto* stages = member(*pj, "stages", json::value_t::array, "pipeline", errs)) {
      for (std::size_t i = 0; i < stages->size(); ++i) {
        const auto& rec = (*stages)[i];
        const std::string where = "pipeline.stages[" + std::to_string(i) + "]";
        if (!rec.is_object()) {
          errs.add(where + ": expected an object");
          continue;
        }
        const auto* id = member(rec, "id", json::value_t::string, where, errs);
        const auto cap_it = rec.find("capacity");
        if (cap_it == rec.end()) errs.add(where + ": missing \"capacity\"");
        if (!id) continue;
        raw.stages.push_back(id->get<std::string>());
        if (cap_it == rec.end()) continue;
        if (auto cap = number(*cap_it, where + ".capacity", errs)) {
          raw.capacities.emplace_back(id->get<std::string>(), *cap);
        }
      }
    }
  }
  if (!errs.empty()) errs.raise();

  auto validated = validate_pipeline(raw);
  if (!validated.ok()) {
    errs.append(validated.violations);
    errs.raise();
  }
  PipelineDocument doc{version, name, std::move(*validated.pipeline), std::nullopt, {}};
  const Pipeline& p = doc.pipeline;

  if (const auto* aj = member(root, "authority", json::value_t::object, "document", errs, false)) {
    AuthoritySpec spec;
    if (const auto* hs = member(*aj, "human_stages", json::value_t::array, "authority", errs)) {
      for (std::size_t i = 0; i < hs->size(); ++i) {
        if (auto id = stage_ref((*hs)[i], "authority.human_stages[" + std::to_string(i) + "]", p, errs)) {
          spec.human_stages.push_back(*id);
        }
      }
    }
    if (const auto* ab = member(*aj, "assist_bounds", json::value_t::object, "authority", errs, false)) {
      spec.assist_bound.emplace();
      for (const auto& [key, value] : ab->items()) {
        const std::string where = "authority.assist_bounds." + key;
        auto id = stage_ref(json(key), where, p, errs);
        auto beta = number(value, where, errs);
        if (id && beta) spec.assist_bound->emplace(*id, *beta);
      }
    }
    if (errs.empty()) {
      try {
        validate_authority(p, spec);
      } catch (const ValidationError& e) {
        errs.append(e.violations());
      }
    }
    doc.authority = std::move(spec);
  }

  if (const auto* sj = member(root, "scenarios", json::value_t::object, "document", errs, false)) {
    for (const auto& [scenario_name, factors] : sj->items()) {
      const std::string where = "scenarios." + scenario_name;
      if (!factors.is_object()) {
        errs.add(where + ": expected an object of stage factors");
        continue;
      }
      std::map<StageId, Rational> f;
      for (const auto& s : p.stages()) f.emplace(s.id, Rational(1));
      bool ok = true;
      for (const auto& [key, value] : factors.items()) {
        auto id = stage_ref(json(key), where + "." + key, p, errs);
        auto factor = number(value, where + "." + key, errs);
        if (!id || !factor) {
          ok = false;
          continue;
        }
        if (*factor < 1) {
          errs.add(5, where + "." + key + ": factor " + factor->str() + " is below 1");
          ok = false;
          continue;
        }
        f.insert_or_assign(*id, *factor);
      }
      if (ok) doc.scenarios.emplace(scenario_name, Multiplier(std::move(f)));
    }
  }

  if (!errs.empty()) errs.raise();
  return doc;
}

PipelineDocument load_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

std::string serialize_document(const PipelineDocument& doc) {
  json stages = json::array();
  for (const auto& s : doc.pipeline.stages()) {
    stages.push_back({{"id", s.id.str()}, {"capacity", s.capacity.str()}});
  }
  json root = {{"format_version", doc.format_version},
               {"pipeline", {{"name", doc.name}, {"stages", std::move(stages)}}}};
  if (doc.authority) {
    json humans = json::array();
    for (const auto& id : doc.authority->human_stages) humans.push_back(id.str());
    json authority = {{"human_stages", std::move(humans)}};
    if (doc.authority->assist_bound) {
      json bounds = json::object();
      for (const auto& [id, beta] : *doc.authority->assist_bound) bounds[id.str()] = beta.str();
      authority["assist_bounds"] = std::move(bounds);
    }
    root["authority"] = std::move(authority);
  }
  if (!doc.scenarios.empty()) {
    json scenarios = json::object();
    for (const auto& [n, a] : doc.scenarios) {
      json factors = json::object();
      for (const auto& [id, f] : a.factors()) factors[id.str()] = f.str();
      scenarios[n] = std::move(factors);
    }
    root["scenarios"] = std::move(scenarios);
  }
  return root.dump(2) + "\n";
}

bool operator==(const PipelineDocument& lhs, const PipelineDocument& rhs) {
  return lhs.format_version == rhs.format_version && lhs.name == rhs.name &&
         lhs.pipeline == rhs.pipeline && lhs.authority == rhs.authority &&
         lhs.scenarios == rhs.scenarios;
}

}  // namespace pipecalc
