#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "pipecalc/human_ceiling.hpp"
#include "pipecalc/pipeline.hpp"

namespace pipecalc {

inline constexpr std::string_view kDocumentFormatVersion = "1";

/// On-disk pipeline description (JSON):
///
///   {
///     "format_version": "1",
///     "pipeline": {"name": "triage",
///                  "stages": [{"id": "a", "capacity": "3"}, ...]},
///     "authority": {"human_stages": ["a"], "assist_bounds": {"a": "2"}},
///     "scenarios": {"boost-b": {"b": "2"}}
///   }
///
/// Capacities and factors are strings holding an integer, a finite decimal
/// or a fraction ("3", "3.25", "13/4"); plain JSON integers are accepted too.
/// "authority" and "scenarios" are optional. Stages missing from a scenario
/// keep factor 1.
struct PipelineDocument {
  std::string format_version{kDocumentFormatVersion};
  std::string name;
  Pipeline pipeline;
  std::optional<AuthoritySpec> authority;
  std::map<std::string, Multiplier> scenarios;

  /// Throws ConfigurationError naming the available scenarios.
  const Multiplier& scenario(const std::string& scenario_name) const;
};

/// Throws DocumentError on malformed JSON and ValidationError listing every
/// schema or modelling violation.
PipelineDocument parse_document(std::string_view json_text);
PipelineDocument load_document(const std::filesystem::path& path);

/// Stable, pretty-printed JSON. parse_document(serialize_document(d)) == d.
std::string serialize_document(const PipelineDocument& doc);

bool operator==(const PipelineDocument& lhs, const PipelineDocument& rhs);

}  // namespace pipecalc
