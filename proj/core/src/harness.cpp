#include "pipecalc/harness.hpp"

#include <algorithm>
#include <exception>
#include <sstream>
#include <thread>

#include "pipecalc/adversarial.hpp"
#include "pipecalc/false_positive.hpp"
#include "pipecalc/human_ceiling.hpp"
#include "pipecalc/oracle.hpp"

namespace pipecalc {
namespace {

// Check names reported by verify_claims.
const char* const kClaimChecks[] = {
    "bottleneck-existence", "throughput", "normal-form", "non-decrease", "invariance",
    "invariance-witness",   "strict-increase", "preservation", "migration",
};

std::string describe(const Pipeline& p, const Multiplier& a) {
  std::ostringstream os;
  os << "capacities=(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p.stages()[i].capacity;
  os << ") factors=(";
  for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << a.factor(p.stages()[i].id);
  os << ")";
  return os.str();
}

class Accumulator {
 public:
  Accumulator(const GeneratorConfig& cfg, std::size_t keep) : cfg_(cfg), keep_(keep) {}

  void set_index(std::uint64_t index) { index_ = index; }

  template <class DetailFn>
  void record(const std::string& check, bool ok, DetailFn&& detail) {
    auto& t = verdict_.tallies[check];
    ++t.checked;
    if (ok) return;
    ++t.violations;
    if (verdict_.counterexamples.size() < keep_) {
      verdict_.counterexamples.push_back({check, cfg_.seed, index_, detail()});
    }
  }

  // Runs `body`; an escaping exception counts as one violation of `check`.
  template <class Body>
  void guarded(const std::string& check, Body&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      record(check, false, [&] { return std::string("exception: ") + e.what(); });
    }
  }

  HarnessVerdict& verdict() { return verdict_; }

 private:
  const GeneratorConfig& cfg_;
  std::size_t keep_;
  std::uint64_t index_ = 0;
  HarnessVerdict verdict_;
};

void check_characterizations(const Pipeline& p, const Multiplier& a, const HarnessOptions& opts,
                             Accumulator& acc) {
  acc.guarded("invariance", [&] {
    CharacterizationClaims claims{opts.classify ? opts.classify(p, a) : classify(p, a),
                                  preservation_report(p, a), migration_decomposition(p, a),
                                  migration_occurred(p, a)};
    const auto verdict = verify_claims(p, a, claims);
    for (const char* name : kClaimChecks) {
      auto it = std::find_if(verdict.counterexamples.begin(), verdict.counterexamples.end(),
                             [&](const Counterexample& c) { return c.check == name; });
      acc.record(name, it == verdict.counterexamples.end(), [&] { return it->detail; });
    }
  });
}

void check_perturbation_laws(const GeneratorConfig& cfg, std::uint64_t index, const Pipeline& p,
                             const Multiplier& a, Accumulator& acc) {
  const auto caps = oracle::capacities(p);
  const Rational t0 = oracle::minimum(caps);
  const auto bottlenecks = oracle::ids_at(p, oracle::minimisers(caps));
  const auto state = [&] { return describe(p, a); };

  acc.guarded("closure", [&] {
    const Pipeline q = perturb(p, a);
    const auto prods = oracle::products(p, a);
    bool ok = q.size() == p.size();
    for (std::size_t i = 0; ok && i < q.size(); ++i) {
      ok = q.stages()[i].id == p.stages()[i].id && q.stages()[i].capacity.is_positive() &&
           q.stages()[i].capacity == prods[i];
    }
    acc.record("closure", ok, state);
  });

  acc.guarded("monotonicity", [&] {
    auto rng = make_stream(cfg.seed, index, Stream::Dominating);
    std::map<StageId, Rational> dom;
    for (const auto& s : p.stages()) dom.emplace(s.id, a.factor(s.id) * rng.pick(cfg.factor_grid));
    const Multiplier b(std::move(dom));
    const Rational ta = oracle::minimum(oracle::products(p, a));
    const Rational tb = oracle::minimum(oracle::products(p, b));
    acc.record("monotonicity", perturbed_throughput(p, a) <= perturbed_throughput(p, b) && ta <= tb,
               [&] { return state() + " dominating=" + describe(p, b); });
    acc.record("non-decrease", perturbed_throughput(p, b) >= t0,
               [&] { return "dominating " + describe(p, b); });
  });

  acc.guarded("non-bottleneck-only", [&] {
    Multiplier only_rest = a;
    for (const auto& v : bottlenecks) only_rest = only_rest.with(v, 1);
    acc.record("non-bottleneck-only", perturbed_throughput(p, only_rest) == t0,
               [&] { return describe(p, only_rest); });
  });

  if (bottlenecks.size() < 2) return;

  acc.guarded("tied-sharpness", [&] {
    Multiplier all_but_first = a.with(bottlenecks.front(), 1);
    for (std::size_t i = 1; i < bottlenecks.size(); ++i) {
      const Rational& f = a.factor(bottlenecks[i]);
      all_but_first = all_but_first.with(bottlenecks[i], f > 1 ? f : Rational(2));
    }
    acc.record("tied-sharpness", perturbed_throughput(p, all_but_first) == t0,
               [&] { return describe(p, all_but_first); });

    const auto unit = std::count_if(bottlenecks.begin(), bottlenecks.end(),
                                    [&](const StageId& v) { return a.factor(v) == 1; });
    if (unit == 1) {
      acc.record("tied-one-unimproved", perturbed_throughput(p, a) == t0, state);
    }
  });
}

void check_ceiling(const GeneratorConfig& cfg, std::uint64_t index, const Pipeline& p,
                   const Multiplier& a, Accumulator& acc) {
  auto rng = make_stream(cfg.seed, index, Stream::Authority);
  AuthoritySpec h;
  if (index % 8 == 0) {
    h.human_stages = p.ids();
  } else {
    for (const auto& s : p.stages()) {
      if (rng.below(2) == 1) h.human_stages.push_back(s.id);
    }
    if (h.human_stages.empty()) h.human_stages.push_back(p.stages()[rng.below(p.size())].id);
  }

  std::vector<Rational> human_caps;
  for (const auto& id : h.human_stages) human_caps.push_back(p.capacity(id));
  const Rational c_h = oracle::minimum(human_caps);
  auto hdesc = [&] {
    std::string out = describe(p, a) + " H={";
    for (std::size_t i = 0; i < h.human_stages.size(); ++i) {
      out += (i ? "," : "") + h.human_stages[i].str();
    }
    return out + "}";
  };

  acc.guarded("ceiling-bound", [&] {
    Multiplier ah = a;
    for (const auto& id : h.human_stages) ah = ah.with(id, 1);
    const bool ok = ceiling(p, h) == c_h && is_h_admissible(ah, h) &&
                    perturbed_throughput(p, ah) <= c_h &&
                    oracle::minimum(oracle::products(p, ah)) <= c_h;
    acc.record("ceiling-bound", ok, hdesc);
  });

  acc.guarded("ceiling-tightness", [&] {
    const Multiplier w = tightness_witness(p, h);
    acc.record("ceiling-tightness",
               is_h_admissible(w, h) && oracle::minimum(oracle::products(p, w)) == c_h,
               [&] { return hdesc() + " witness=" + describe(p, w); });
    bool margin = true;
    for (const auto& s : p.stages()) {
      if (std::find(h.human_stages.begin(), h.human_stages.end(), s.id) != h.human_stages.end()) {
        continue;
      }
      margin = margin && w.factor(s.id) * s.capacity > c_h;
    }
    acc.record("ceiling-machine-margin", margin, [&] { return hdesc() + " witness=" + describe(p, w); });
  });

  acc.guarded("generalized-ceiling-bound", [&] {
    AuthoritySpec hb = h;
    hb.assist_bound.emplace();
    AuthoritySpec unit = h;
    unit.assist_bound.emplace();
    Multiplier assisted = a;
    for (const auto& id : h.human_stages) {
      const Rational beta = rng.pick(cfg.factor_grid);
      hb.assist_bound->emplace(id, beta);
      unit.assist_bound->emplace(id, 1);
      assisted = assisted.with(id, min(a.factor(id), beta));
    }
    const bool ok = within_assist_bounds(assisted, hb) &&
                    perturbed_throughput(p, assisted) <= generalized_ceiling(p, hb);
    acc.record("generalized-ceiling-bound", ok, [&] { return hdesc() + " assisted=" + describe(p, assisted); });
    acc.record("generalized-ceiling-reduction", generalized_ceiling(p, unit) == c_h, hdesc);
  });
}

void check_adversarial(const GeneratorConfig& cfg, std::uint64_t index, const Pipeline& p,
                       const Multiplier& a, Accumulator& acc) {
  auto rng = make_stream(cfg.seed, index, Stream::Defender);
  const Instance def = draw_instance(cfg, rng);
  const PipePair pair{p, def.pipeline};
  auto state = [&] { return "attacker " + describe(p, a) + " defender " + describe(def.pipeline, def.multiplier); };

  acc.guarded("adversarial-equivalence", [&] {
    const auto r = ratio_report(pair, a, def.multiplier);
    const Rational ta = oracle::minimum(oracle::capacities(p));
    const Rational td = oracle::minimum(oracle::capacities(def.pipeline));
    const Rational ta1 = oracle::minimum(oracle::products(p, a));
    const Rational td1 = oracle::minimum(oracle::products(def.pipeline, def.multiplier));
    const Rational ratio = ta1 / td1;
    const Rational base = ta / td;
    const Rational ga = ta1 / ta;
    const Rational gd = td1 / td;
    const bool ok = r.perturbed_ratio == ratio && r.baseline_ratio == base && r.attacker_gain == ga &&
                    r.defender_gain == gd && (ratio > base) == (ga > gd) &&
                    r.favours_attacker == (ratio > base) && ratio.is_positive() &&
                    base.is_positive() && ga.is_positive() && gd.is_positive();
    acc.record("adversarial-equivalence", ok, state);

    if (defender_misses_bottleneck(pair, a, def.multiplier)) {
      acc.record("defender-miss", r.favours_attacker && ga > 1 && gd == 1, state);
    }

    const Rational scale = rng.pick(cfg.capacity_grid);
    std::vector<Stage> scaled;
    for (const auto& s : def.pipeline.stages()) scaled.push_back({s.id, s.capacity * scale});
    const PipePair scaled_pair{p, Pipeline(std::move(scaled))};
    const auto rs = ratio_report(scaled_pair, a, def.multiplier);
    acc.record("ratio-scale-invariance",
               rs.favours_attacker == r.favours_attacker && rs.perturbed_ratio * scale == r.perturbed_ratio &&
                   rs.baseline_ratio * scale == r.baseline_ratio,
               [&] { return state() + " scale=" + scale.str(); });
  });
}

void check_false_positive(const GeneratorConfig& cfg, std::uint64_t index, Accumulator& acc) {
  auto rng = make_stream(cfg.seed, index, Stream::FalsePositive);
  const Rational f(static_cast<std::int64_t>(rng.below(16)), 16);
  const Rational c_inv = rng.pick(cfg.capacity_grid);
  std::vector<Rational> rates;
  Rational rate = c_inv;
  for (int i = 0; i < 4; ++i) {
    rate += Rational(static_cast<std::int64_t>(1 + rng.below(32)), static_cast<std::int64_t>(1 + rng.below(4)));
    rates.push_back(rate);
  }
  auto state = [&] {
    std::string out = "f=" + f.str() + " c_inv=" + c_inv.str() + " rates=(";
    for (std::size_t i = 0; i < rates.size(); ++i) out += (i ? "," : "") + rates[i].str();
    return out + ")";
  };

  acc.guarded("plateau", [&] {
    const FixedFractionModel m(f, c_inv);
    const auto v = plateau_check(m, rates);
    acc.record("plateau", v.pass() && v.common_value == (Rational(1) - f) * c_inv, state);

    const Rational low = c_inv * Rational(static_cast<std::int64_t>(1 + rng.below(8)), 9);
    const Rational lower = low / 2;
    const bool ok = simple_useful(low, m) == (Rational(1) - f) * low &&
                    simple_useful(c_inv, m) == (Rational(1) - f) * c_inv &&
                    simple_useful(lower, m) < simple_useful(low, m);
    acc.record("below-saturation", ok, state);
  });

  acc.guarded("rational-decline", [&] {
    const Rational k(static_cast<std::int64_t>(1 + rng.below(10)), 10);
    const auto v = decline_check(PrecisionFunction::rational_decay(k), c_inv, rates);
    acc.record("rational-decline", v.pass() && v.mode == DeclineVerdict::Mode::StrictDecline,
               [&] { return state() + " k=" + k.str(); });
  });

  acc.guarded("table-decline", [&] {
    const Rational end = rates.back() + 1;
    const Rational mid = c_inv + (end - c_inv) * Rational(static_cast<std::int64_t>(1 + rng.below(7)), 8);
    const Rational q(static_cast<std::int64_t>(1 + rng.below(7)), 8);
    const auto table = PrecisionFunction::table({{c_inv, 1}, {mid, q}, {end, 0}});
    const auto v = decline_check(table, c_inv, rates);
    acc.record("table-decline", v.pass(), [&] { return state() + " " + table.describe(); });
  });

  acc.guarded("exponential-decline", [&] {
    const Rational k(static_cast<std::int64_t>(1 + rng.below(10)), 100);
    const auto v = decline_check(PrecisionFunction::exponential_decay(k), c_inv, rates);
    bool approx_ok = v.pass();
    for (std::size_t i = 0; approx_ok && i + 1 < v.values.size(); ++i) {
      approx_ok = v.values[i].approx() > v.values[i + 1].approx();
    }
    acc.record("exponential-decline", approx_ok, [&] { return state() + " k=" + k.str(); });
  });

  acc.guarded("constant-precision", [&] {
    const Rational f0 = Rational(1) - f;
    const auto v = decline_check(PrecisionFunction::constant(f0), c_inv, rates);
    bool ok = v.pass() && v.mode == DeclineVerdict::Mode::Constant;
    for (const auto& u : v.values) ok = ok && u.exact() == f0 * c_inv;
    acc.record("constant-precision", ok, state);

    const FixedFractionModel m(f, c_inv);
    bool same = true;
    for (const auto& r : rates) {
      same = same && repaired_useful(r, PrecisionFunction::constant(f0), c_inv).exact() == simple_useful(r, m);
    }
    acc.record("constant-reduction", same, state);
  });
}

void check_instance(const GeneratorConfig& cfg, std::uint64_t index, const HarnessOptions& opts,
                    Accumulator& acc) {
  acc.set_index(index);
  std::optional<Instance> inst;
  acc.guarded("generation", [&] { inst = generate_instance(cfg, index); });
  if (!inst) return;
  const auto& [p, a] = *inst;

  const auto caps = oracle::capacities(p);
  const auto b_idx = oracle::minimisers(caps);
  if (b_idx.size() >= 2) ++acc.verdict().tied_instances;
  if (std::any_of(b_idx.begin(), b_idx.end(),
                  [&](std::size_t i) { return a.factor(p.stages()[i].id) == 1; })) {
    ++acc.verdict().unit_factor_instances;
  }

  check_characterizations(p, a, opts, acc);
  check_perturbation_laws(cfg, index, p, a, acc);
  check_ceiling(cfg, index, p, a, acc);
  check_adversarial(cfg, index, p, a, acc);
  check_false_positive(cfg, index, acc);
}

}  // namespace

std::uint64_t HarnessVerdict::total_violations() const noexcept {
  std::uint64_t total = 0;
  for (const auto& [_, t] : tallies) total += t.violations;
  return total;
}

HarnessVerdict verify_range(const GeneratorConfig& cfg, std::uint64_t first, std::uint64_t last,
                            const HarnessOptions& options) {
  cfg.validate();
  last = std::min(last, cfg.instance_count);
  first = std::min(first, last);

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  const std::uint64_t span = last - first;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(span, 1)));

  std::vector<Accumulator> parts;
  parts.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) parts.emplace_back(cfg, options.max_counterexamples);

  // Contiguous chunks keep the merged counterexample list in index order.
  auto run = [&](unsigned t) {
    const std::uint64_t lo = first + span * t / threads;
    const std::uint64_t hi = first + span * (t + 1) / threads;
    for (std::uint64_t i = lo; i < hi; ++i) check_instance(cfg, i, options, parts[t]);
  };
  {
    std::vector<std::jthread> workers;
    for (unsigned t = 1; t < threads; ++t) workers.emplace_back(run, t);
    run(0);
  }

  HarnessVerdict out;
  out.seed = cfg.seed;
  out.instance_count = span;
  for (auto& part : parts) {
    auto& v = part.verdict();
    for (const auto& [name, tally] : v.tallies) {
      out.tallies[name].checked += tally.checked;
      out.tallies[name].violations += tally.violations;
    }
    for (auto& c : v.counterexamples) {
      if (out.counterexamples.size() < options.max_counterexamples) {
        out.counterexamples.push_back(std::move(c));
      }
    }
    out.tied_instances += v.tied_instances;
    out.unit_factor_instances += v.unit_factor_instances;
  }
  return out;
}

HarnessVerdict verify_all(const GeneratorConfig& cfg, const HarnessOptions& options) {
  return verify_range(cfg, 0, cfg.instance_count, options);
}

}  // namespace pipecalc
