#include "cli.hpp"

#include <algorithm>
#include <array>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "pipecalc/document.hpp"
#include "pipecalc/errors.hpp"
#include "render.hpp"

namespace pipecalc::cli {
namespace {

constexpr std::array kSubcommands = {"analyze", "perturb", "ceiling", "compare", "fp", "plan", "verify"};

struct Settings {
  std::string format = "text";
  bool structured() const { return format == "structured"; }
};

Rational parse_number(const std::string& text, const std::string& flag) {
  if (auto r = Rational::try_parse(text)) return *r;
  throw ParameterError(flag + ": \"" + text + "\" is not an exact number (use 3, 3.25 or 13/4)");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::pair<std::string, Rational> parse_assignment(const std::string& text, const std::string& flag) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0) throw ParameterError(flag + " expects stage=value, got \"" + text + "\"");
  return {text.substr(0, eq), parse_number(text.substr(eq + 1), flag)};
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

// ---- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
  std::string file;
};

int run_analyze(const AnalyzeArgs& args, const Settings& settings, std::ostream& out) {
  const auto doc = load_document(args.file);
  const auto report = bottleneck_report(doc.pipeline);
  if (settings.structured()) {
    Json j = {{"command", "analyze"}, {"pipeline", doc.name}, {"stages", capacities(doc.pipeline)}};
    j.update(to_json(report));
    emit(out, j);
  } else {
    out << "pipeline: " << doc.name << "\n";
    for (const auto& s : doc.pipeline.stages()) out << "  " << s.id.str() << "  capacity " << s.capacity << "\n";
    out << "throughput: " << report.throughput << "\n"
        << "bottlenecks: " << join(report.bottlenecks) << "\n"
        << "non-bottlenecks: " << join(report.non_bottlenecks) << "\n";
  }
  return kOk;
}

// ---- perturb ---------------------------------------------------------------

struct PerturbArgs {
  std::string file;
  std::string scenario;
};

int run_perturb(const PerturbArgs& args, const Settings& settings, std::ostream& out) {
  const auto doc = load_document(args.file);
  const Pipeline& p = doc.pipeline;

  std::vector<std::string> names;
  if (!args.scenario.empty()) {
    doc.scenario(args.scenario);
    names.push_back(args.scenario);
  } else {
    for (const auto& [n, _] : doc.scenarios) names.push_back(n);
  }
  if (names.empty()) throw ConfigurationError("document defines no scenarios");

  bool verified = true;
  Json results = Json::array();
  for (const auto& name : names) {
    const Multiplier& a = doc.scenario(name);
    const auto claims = collect_claims(p, a);
    const auto check = verify_claims(p, a, claims);
    verified = verified && check.pass();
    const Pipeline q = perturb(p, a);
    const auto before = bottleneck_report(p);
    const auto after = bottleneck_report(q);

    if (settings.structured()) {
      Json counter = Json::array();
      for (const auto& c : check.counterexamples) counter.push_back({{"check", c.check}, {"detail", c.detail}});
      results.push_back({{"scenario", name},
                         {"factors", factors(p, a)},
                         {"perturbed_stages", capacities(q)},
                         {"bottlenecks_before", stage_list(before.bottlenecks)},
                         {"bottlenecks_after", stage_list(after.bottlenecks)},
                         {"classification", to_json(claims.classification)},
                         {"migration", to_json(claims.migration, claims.migrated)},
                         {"preservation", to_json(claims.preservation)},
                         {"verified", check.pass()},
                         {"counterexamples", std::move(counter)}});
      continue;
    }
    const auto& c = claims.classification;
    out << "scenario: " << name << "\n";
    for (const auto& s : p.stages()) {
      out << "  " << s.id.str() << "  " << s.capacity << " x " << a.factor(s.id) << " = "
          << q.capacity(s.id) << "\n";
    }
    out << "throughput: " << c.before << " -> " << c.after << " (" << to_string(c.outcome) << ")\n"
        << "bottlenecks: " << join(before.bottlenecks) << " -> " << join(after.bottlenecks) << "\n"
        << "some bottleneck unimproved: " << yes_no(c.some_bottleneck_unimproved) << "\n"
        << "all bottlenecks improved: " << yes_no(c.all_bottlenecks_improved) << "\n";
    if (c.witness) out << "witness: " << c.witness->str() << " keeps factor 1\n";
    out << "migration: " << yes_no(claims.migrated) << " (departed " << join(claims.migration.departed)
        << "; entered " << join(claims.migration.entered) << ")\n";
    const auto& pr = claims.preservation;
    out << "bottleneck set preserved: " << yes_no(pr.preserved) << "\n"
        << "  equal factors on bottlenecks: " << yes_no(pr.equal_bottleneck_factors);
    if (pr.common_factor) out << " (common factor " << *pr.common_factor << ")";
    out << "\n  bottlenecks stay strictly below the rest: " << yes_no(pr.bottlenecks_stay_below)
        << (pr.below_condition_vacuous ? " (vacuous)" : "") << "\n";
    for (const auto& ce : check.counterexamples) out << "COUNTEREXAMPLE [" << ce.check << "] " << ce.detail << "\n";
    out << "\n";
  }
  if (settings.structured()) {
    emit(out, {{"command", "perturb"}, {"pipeline", doc.name}, {"results", std::move(results)}});
  }
  return verified ? kOk : kCounterexample;
}

// ---- ceiling ---------------------------------------------------------------

struct CeilingArgs {
  std::string file;
  std::string human;
  std::vector<std::string> assist;
  std::string scenario;
};

int run_ceiling(const CeilingArgs& args, const Settings& settings, std::ostream& out) {
  const auto doc = load_document(args.file);
  const Pipeline& p = doc.pipeline;

  AuthoritySpec h;
  if (!args.human.empty()) {
    for (const auto& id : split(args.human, ',')) h.human_stages.emplace_back(id);
  } else if (doc.authority) {
    h = *doc.authority;
  } else {
    throw ConfigurationError("no human stages: add an \"authority\" section or pass --human");
  }
  if (!args.assist.empty()) {
    h.assist_bound.emplace();
    for (const auto& item : args.assist) {
      auto [id, beta] = parse_assignment(item, "--assist");
      h.assist_bound->insert_or_assign(StageId(id), beta);
    }
  } else if (!args.human.empty()) {
    h.assist_bound.reset();
  }
  validate_authority(p, h);

  const Rational cap = ceiling(p, h);
  const auto n = machine_acceleration(p, h);
  const Multiplier w = tightness_witness(p, h);
  const Rational achieved = perturbed_throughput(p, w);
  if (achieved != cap || !is_h_admissible(w, h)) {
    throw InternalVerificationError("tightness witness reaches " + achieved.str() + ", ceiling is " + cap.str());
  }
  std::optional<Rational> general;
  if (h.assist_bound) general = generalized_ceiling(p, h);

  std::optional<std::pair<bool, Rational>> scen;
  if (!args.scenario.empty()) {
    const auto& a = doc.scenario(args.scenario);
    scen.emplace(is_h_admissible(a, h), perturbed_throughput(p, a));
    if (scen->first && scen->second > cap) {
      throw InternalVerificationError("human-admissible scenario exceeds the ceiling");
    }
  }

  if (settings.structured()) {
    Json j = {{"command", "ceiling"},
              {"pipeline", doc.name},
              {"human_stages", stage_list(h.human_stages)},
              {"ceiling", cap.str()},
              {"witness",
               {{"machine_factor", n ? Json(n->str()) : Json()},
                {"factors", factors(p, w)},
                {"throughput", achieved.str()}}},
              {"generalized_ceiling", general ? Json(general->str()) : Json()},
              {"generalized_ceiling_kind", "bound-only"}};
    if (scen) {
      j["scenario"] = {{"name", args.scenario},
                       {"human_admissible", scen->first},
                       {"throughput", scen->second.str()}};
    }
    emit(out, j);
    return kOk;
  }
  out << "human stages: " << join(h.human_stages) << "\n"
      << "ceiling: " << cap << "\n";
  if (n) {
    out << "witness: factor " << *n << " on every machine stage, 1 on human stages -> throughput "
        << achieved << "\n";
  } else {
    out << "witness: identity (every stage is human) -> throughput " << achieved << "\n";
  }
  if (general) out << "generalized ceiling with assist bounds: " << *general << " (upper bound only)\n";
  if (scen) {
    out << "scenario " << args.scenario << ": human-admissible " << yes_no(scen->first) << ", throughput "
        << scen->second << "\n";
  }
  return kOk;
}

// ---- compare ---------------------------------------------------------------

struct CompareArgs {
  std::string attacker_file;
  std::string defender_file;
  std::string scenario;
  std::string attacker_scenario;
  std::string defender_scenario;
};

int run_compare(const CompareArgs& args, const Settings& settings, std::ostream& out) {
  const auto att = load_document(args.attacker_file);
  const auto def = load_document(args.defender_file);
  auto pick = [&](const PipelineDocument& d, const std::string& specific) {
    const std::string& name = specific.empty() ? args.scenario : specific;
    return name.empty() ? Multiplier::identity(d.pipeline) : d.scenario(name);
  };
  const Multiplier aa = pick(att, args.attacker_scenario);
  const Multiplier ad = pick(def, args.defender_scenario);
  const PipePair pair{att.pipeline, def.pipeline};
  const auto r = ratio_report(pair, aa, ad);
  const bool missed = defender_misses_bottleneck(pair, aa, ad);
  if (missed && !r.favours_attacker) {
    throw InternalVerificationError("defender missed its bottleneck but the ratio did not move");
  }
  if (settings.structured()) {
    Json j = {{"command", "compare"}, {"attacker", att.name}, {"defender", def.name}};
    j.update(to_json(r));
    j["defender_misses_bottleneck"] = missed;
    emit(out, j);
    return kOk;
  }
  out << "attacker: " << att.name << "  defender: " << def.name << "\n"
      << "baseline ratio: " << r.baseline_ratio << "\n"
      << "perturbed ratio: " << r.perturbed_ratio << "\n"
      << "attacker gain: " << r.attacker_gain << "\n"
      << "defender gain: " << r.defender_gain << "\n"
      << "favours attacker: " << yes_no(r.favours_attacker) << "\n"
      << "defender misses bottleneck: " << yes_no(missed) << "\n";
  return kOk;
}

// ---- fp --------------------------------------------------------------------

struct FpArgs {
  std::string fraction;
  std::string capacity;
  std::string samples;
  std::vector<std::string> precision;
  std::string stage;
};

int run_fp(const FpArgs& args, const Settings& settings, std::ostream& out) {
  const Rational c_inv = parse_number(args.capacity, "--capacity");
  std::vector<Rational> rates;
  for (const auto& s : split(args.samples, ',')) rates.push_back(parse_number(s, "--samples"));
  if (rates.empty()) throw ParameterError("--samples needs at least one rate");
  if (args.fraction.empty() && args.precision.empty()) {
    throw ParameterError("nothing to check: pass --fraction and/or --precision");
  }

  bool pass = true;
  Json j = {{"command", "fp"}, {"investigation_capacity", c_inv.str()}};
  if (!args.stage.empty()) j["stage"] = args.stage;
  Json rates_json = Json::array();
  for (const auto& r : rates) rates_json.push_back(r.str());
  j["rates"] = std::move(rates_json);

  if (!args.stage.empty() && !settings.structured()) out << "stage: " << args.stage << "\n";
  if (!args.fraction.empty()) {
    const FixedFractionModel m(parse_number(args.fraction, "--fraction"), c_inv);
    const auto v = plateau_check(m, rates);
    pass = pass && v.pass();
    j["plateau"] = to_json(v);
    j["plateau"]["fraction"] = m.false_positive_fraction().str();
    if (!settings.structured()) {
      out << "fixed fraction " << m.false_positive_fraction() << ", capacity " << c_inv << ": useful throughput "
          << v.common_value << " at all " << v.samples << " rates -> " << (v.pass() ? "plateau" : "MISMATCH")
          << "\n";
    }
  }
  Json declines = Json::array();
  for (const auto& spec : args.precision) {
    const auto p = PrecisionFunction::parse(spec);
    const auto v = decline_check(p, c_inv, rates);
    pass = pass && v.pass();
    Json d = to_json(v);
    d["precision"] = p.describe();
    declines.push_back(std::move(d));
    if (!settings.structured()) {
      out << p.describe() << ":";
      for (const auto& u : v.values) out << " " << u.str();
      out << " -> "
          << (v.mode == DeclineVerdict::Mode::Constant ? (v.pass() ? "constant" : "NOT CONSTANT")
                                                       : (v.pass() ? "strictly declining" : "NOT DECLINING"))
          << "\n";
    }
  }
  if (!args.precision.empty()) j["decline"] = std::move(declines);
  j["pass"] = pass;
  if (settings.structured()) emit(out, j);
  return pass ? kOk : kCounterexample;
}

// ---- plan ------------------------------------------------------------------

struct PlanArgs {
  std::string file;
  std::string budget;
  std::vector<std::string> unit_costs;
  std::string tolerance = "1/1024";
};

int run_plan(const PlanArgs& args, const Settings& settings, std::ostream& out) {
  const auto doc = load_document(args.file);
  const Pipeline& p = doc.pipeline;
  CostModel c = CostModel::uniform(p, 1, parse_number(args.budget, "--budget"));
  for (const auto& item : args.unit_costs) {
    auto [id, u] = parse_assignment(item, "--unit-cost");
    if (!p.contains(StageId(id))) throw ParameterError("--unit-cost: unknown stage '" + id + "'");
    c.unit_cost.insert_or_assign(StageId(id), u);
  }
  const Rational tol = parse_number(args.tolerance, "--tolerance");

  std::optional<AllocationResult> trivial;
  std::string refusal;
  try {
    trivial = trivial_allocation(p, c);
  } catch (const TiedBottleneckError& e) {
    refusal = e.what();
  }
  const auto best = maxmin_allocation(p, c, tol);

  if (settings.structured()) {
    Json j = {{"command", "plan"},
              {"pipeline", doc.name},
              {"budget", c.budget.str()},
              {"tolerance", tol.str()},
              {"cost_model", "linear in (factor - 1)"}};
    j["trivial"] = trivial ? to_json(p, *trivial) : Json{{"refused", refusal}};
    j["maxmin"] = to_json(p, best);
    emit(out, j);
    return kOk;
  }
  auto show = [&](const AllocationResult& r) {
    for (const auto& s : p.stages()) out << "  " << s.id.str() << "  factor " << r.multiplier.factor(s.id) << "\n";
    out << "  throughput " << r.achieved_throughput << ", spent " << r.spent << " of " << c.budget
        << (r.cap_binding ? " (capped at the next-smallest capacity)" : "") << "\n";
  };
  out << "budget: " << c.budget << " (cost linear in factor - 1)\n";
  out << "bottleneck-only allocation:\n";
  if (trivial) {
    show(*trivial);
  } else {
    out << "  refused: " << refusal << "\n";
  }
  out << "max-min allocation (tolerance " << tol << "):\n";
  show(best);
  return kOk;
}

// ---- verify ----------------------------------------------------------------

struct VerifyArgs {
  std::uint64_t seed = 0;
  std::uint64_t count = 10000;
  std::size_t max_stages = 8;
  unsigned threads = 0;
};

int run_verify(const VerifyArgs& args, const Settings& settings, std::ostream& out) {
  GeneratorConfig cfg;
  cfg.seed = args.seed;
  cfg.instance_count = args.count;
  cfg.max_stages = args.max_stages;
  HarnessOptions opts;
  opts.threads = args.threads;
  const auto v = verify_all(cfg, opts);

  if (settings.structured()) {
    Json j = {{"command", "verify"}, {"max_stages", cfg.max_stages}};
    j.update(to_json(v));
    emit(out, j);
  } else {
    out << "verify seed=" << v.seed << " count=" << v.instance_count << " max-stages=" << cfg.max_stages << "\n";
    for (const auto& [name, t] : v.tallies) {
      out << "  " << name << ": " << t.checked << " checked, " << t.violations << " violations\n";
    }
    out << "tied-bottleneck instances: " << v.tied_instances << "\n"
        << "instances with an unimproved bottleneck: " << v.unit_factor_instances << "\n";
    for (const auto& c : v.counterexamples) {
      out << "COUNTEREXAMPLE [" << c.check << "] seed=" << c.seed << " index=" << c.index << ": " << c.detail
          << "\n";
    }
    out << "result: " << (v.pass() ? "PASS" : "FAIL") << "\n";
  }
  return v.pass() ? kOk : kCounterexample;
}

void report_error(std::ostream& err, const ValidationError& e) {
  err << "error: validation failed\n";
  for (const auto& v : e.violations()) {
    err << "  ";
    if (v.assumption != 0) err << "assumption " << v.assumption << ": ";
    err << v.message << "\n";
  }
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
      std::find(kSubcommands.begin(), kSubcommands.end(), args.front()) == kSubcommands.end()) {
    err << "error: unknown subcommand '" << args.front()
        << "' (expected analyze, perturb, ceiling, compare, fp, plan or verify)\n";
    return kValidationError;
  }

  CLI::App app{"Exact bottleneck and throughput analysis for serial pipelines", "pipecalc"};
  app.require_subcommand(1);
  app.fallthrough();
  Settings settings;
  app.add_option("--format", settings.format, "Report format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  AnalyzeArgs analyze;
  auto* analyze_cmd = app.add_subcommand("analyze", "Throughput and bottleneck set of a pipeline");
  analyze_cmd->add_option("file", analyze.file, "Pipeline document")->required();

  PerturbArgs perturb_args;
  auto* perturb_cmd = app.add_subcommand("perturb", "Classify the effect of scenario multipliers");
  perturb_cmd->add_option("file", perturb_args.file, "Pipeline document")->required();
  perturb_cmd->add_option("--scenario", perturb_args.scenario, "Scenario name (default: all)");

  CeilingArgs ceiling_args;
  auto* ceiling_cmd = app.add_subcommand("ceiling", "Human-authority ceiling and its witness");
  ceiling_cmd->add_option("file", ceiling_args.file, "Pipeline document")->required();
  ceiling_cmd->add_option("--human", ceiling_args.human, "Comma-separated human stages (overrides document)");
  ceiling_cmd->add_option("--assist", ceiling_args.assist, "Assist bound stage=beta (repeatable)");
  ceiling_cmd->add_option("--scenario", ceiling_args.scenario, "Also test a scenario against the ceiling");

  CompareArgs compare_args;
  auto* compare_cmd = app.add_subcommand("compare", "Attacker/defender throughput ratio");
  compare_cmd->add_option("attacker", compare_args.attacker_file, "Attacker pipeline document")->required();
  compare_cmd->add_option("defender", compare_args.defender_file, "Defender pipeline document")->required();
  compare_cmd->add_option("--scenario", compare_args.scenario, "Scenario applied on both sides");
  compare_cmd->add_option("--attacker-scenario", compare_args.attacker_scenario, "Attacker scenario");
  compare_cmd->add_option("--defender-scenario", compare_args.defender_scenario, "Defender scenario");

  FpArgs fp_args;
  auto* fp_cmd = app.add_subcommand("fp", "Plateau and decline checks for useful throughput");
  fp_cmd->add_option("--fraction", fp_args.fraction, "Fixed false-positive fraction f in [0,1)");
  fp_cmd->add_option("--capacity", fp_args.capacity, "Investigation capacity")->required();
  fp_cmd->add_option("--samples", fp_args.samples, "Comma-separated alert rates")->required();
  fp_cmd->add_option("--precision", fp_args.precision,
                     "constant:F | rational:K | exponential:K | table:R=P,... (repeatable)");
  fp_cmd->add_option("--stage", fp_args.stage, "Label for the investigation stage");

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "Budgeted multiplier allocation");
  plan_cmd->add_option("file", plan_args.file, "Pipeline document")->required();
  plan_cmd->add_option("--budget", plan_args.budget, "Total budget")->required();
  plan_cmd->add_option("--unit-cost", plan_args.unit_costs, "stage=cost (repeatable, default 1)");
  plan_cmd->add_option("--tolerance", plan_args.tolerance, "Bisection tolerance")->capture_default_str();

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Randomised check of every characterisation");
  verify_cmd->add_option("--seed", verify_args.seed, "Generator seed")->capture_default_str();
  verify_cmd->add_option("--count", verify_args.count, "Number of instances")->capture_default_str();
  verify_cmd->add_option("--max-stages", verify_args.max_stages, "Largest pipeline")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  verify_cmd->add_option("--threads", verify_args.threads, "Worker threads (0 = all cores)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidationError;
  }

  try {
    if (*analyze_cmd) return run_analyze(analyze, settings, out);
    if (*perturb_cmd) return run_perturb(perturb_args, settings, out);
    if (*ceiling_cmd) return run_ceiling(ceiling_args, settings, out);
    if (*compare_cmd) return run_compare(compare_args, settings, out);
    if (*fp_cmd) return run_fp(fp_args, settings, out);
    if (*plan_cmd) return run_plan(plan_args, settings, out);
    if (*verify_cmd) return run_verify(verify_args, settings, out);
  } catch (const InternalVerificationError& e) {
    err << "internal verification failure: " << e.what() << "\n";
    return kCounterexample;
  } catch (const ValidationError& e) {
    report_error(err, e);
    return kValidationError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  }
  return kValidationError;
}

}  // namespace pipecalc::cli
