#pragma once

// Randomized sweep engine: evaluates every registered bound on generated instances, classifies
// the records, and aggregates tightness statistics into a deterministic report.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "numrad/block_bounds.hpp"
#include "numrad/bound_record.hpp"
#include "numrad/error.hpp"
#include "numrad/generators.hpp"
#include "numrad/io.hpp"
#include "numrad/product_bounds.hpp"
#include "numrad/rng.hpp"
#include "numrad/scalar_bounds.hpp"

namespace numrad {

/// The one bound whose violations are anticipated (the typeset form of the Dragomir bound).
inline constexpr std::string_view expected_violation_id = "eq1.5.as_printed";

/// One generated instance plus the quantities shared between the bounds evaluated on it.
struct InstanceContext {
  GeneratorSpec spec;  // seed is the instance seed
  Instance instance;
  std::optional<OperatorProfile> profile;

  const ComplexMatrix& single() const { return std::get<ComplexMatrix>(instance); }
  const MatrixPair& pair() const { return std::get<MatrixPair>(instance); }
  const BlockPartition& partition() const { return std::get<BlockPartition>(instance); }

  OperatorProfile& operator_profile() {
    if (!profile) profile.emplace(single());
    return *profile;
  }
};

struct BoundGroup {
  std::string name;
  std::vector<std::string> ids;
  std::function<bool(const GeneratorSpec&)> applicable;
  std::function<std::vector<BoundRecord>(InstanceContext&, SplitMix64&)> evaluate;
};

namespace detail {

inline bool is_single(const GeneratorSpec& s) { return arity_of(s.kind) == Arity::single; }
inline bool is_positive_kind(const GeneratorSpec& s) { return s.kind == GeneratorKind::positive; }
inline bool is_pair(const GeneratorSpec& s) { return arity_of(s.kind) == Arity::pair; }
inline bool is_kind(const GeneratorSpec& s, GeneratorKind k) { return s.kind == k; }

inline bool palindromic_sizes(const std::vector<std::size_t>& k) {
  return !k.empty() && std::equal(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(k.size() / 2), k.rbegin());
}

inline std::string param_note(const std::string& name, double v) { return name + "=" + format_real(v); }

inline std::vector<BoundRecord> with_note(std::vector<BoundRecord> recs, const std::string& note) {
  for (auto& r : recs) append_note(r, note);
  return recs;
}

inline std::vector<BoundGroup> build_registry() {
  using K = GeneratorKind;
  std::vector<BoundGroup> g;
  auto single = [](const GeneratorSpec& s) { return is_single(s); };
  auto positive = [](const GeneratorSpec& s) { return is_positive_kind(s); };
  auto intertwined = [](const GeneratorSpec& s) { return is_kind(s, K::intertwined_pair); };
  auto commuting = [](const GeneratorSpec& s) { return is_kind(s, K::commuting_pair); };
  auto contraction = [](const GeneratorSpec& s) { return is_kind(s, K::contraction_pair); };

  g.push_back({"eq1.1", {"eq1.1.lower", "eq1.1.upper"}, single, [](InstanceContext& c, SplitMix64&) {
                 auto [lo, up] = eq11_sandwich(c.operator_profile());
                 return std::vector<BoundRecord>{lo, up};
               }});
  g.push_back({"eq1.2", {"eq1.2"}, single, [](InstanceContext& c, SplitMix64&) {
                 return std::vector<BoundRecord>{kittaneh2003(c.operator_profile())};
               }});
  g.push_back({"eq1.3", {"eq1.3.lower", "eq1.3.upper"}, single, [](InstanceContext& c, SplitMix64&) {
                 auto [lo, up] = kittaneh2005(c.operator_profile());
                 return std::vector<BoundRecord>{lo, up};
               }});
  g.push_back({"eq1.4", {"eq1.4.first", "eq1.4.second"}, single, [](InstanceContext& c, SplitMix64&) {
                 auto [first, second] = yamazaki(c.operator_profile());
                 return std::vector<BoundRecord>{first, second};
               }});
  g.push_back({"eq1.5", {"eq1.5.as_printed", "eq1.5.squared_norm"}, single, [](InstanceContext& c, SplitMix64&) {
                 auto& p = c.operator_profile();
                 return std::vector<BoundRecord>{dragomir(p, DragomirVariant::as_printed),
                                                 dragomir(p, DragomirVariant::squared_norm)};
               }});
  g.push_back({"eq2.4", {"eq2.4"}, single, [](InstanceContext& c, SplitMix64& rng) {
                 const std::size_t n = c.single().rows();
                 const Vector x = rng.complex_normal_vector(n), y = rng.complex_normal_vector(n);
                 const double alpha = rng.uniform();
                 return with_note({mixed_schwarz_gap(c.single(), x, y, alpha)}, param_note("alpha", alpha));
               }});
  g.push_back({"buzano.key", {"buzano.key"}, single, [](InstanceContext& c, SplitMix64& rng) {
                 const std::size_t n = c.single().rows();
                 const Vector x = rng.complex_normal_vector(n), y = rng.complex_normal_vector(n);
                 const Vector e = rng.unit_vector(n);
                 return std::vector<BoundRecord>{buzano_key_check(x, y, e)};
               }});
  g.push_back({"pmi", {"pmi"}, single, [](InstanceContext&, SplitMix64& rng) {
                 const double a = rng.uniform(0.0, 3.0), b = rng.uniform(0.0, 3.0);
                 const double w = rng.uniform(), p = rng.uniform(1.0, 4.0);
                 return with_note(power_mean_checks(a, b, w, p), param_note("a", a) + " " + param_note("b", b) +
                                                                     " " + param_note("weight", w) + " " +
                                                                     param_note("p", p));
               }});
  g.push_back({"young", {"young"}, single, [](InstanceContext&, SplitMix64& rng) {
                 const double a = rng.uniform(0.0, 3.0), b = rng.uniform(0.0, 3.0);
                 const double alpha = rng.uniform(1.05, 5.0), beta = alpha / (alpha - 1.0);
                 const double p = rng.uniform(1.0, 4.0);
                 return with_note(power_young_checks(a, b, alpha, beta, p),
                                  param_note("a", a) + " " + param_note("b", b) + " " + param_note("alpha", alpha) +
                                      " " + param_note("p", p));
               }});
  g.push_back({"mccarty", {"mccarty"}, positive, [](InstanceContext& c, SplitMix64& rng) {
                 const Vector x = rng.unit_vector(c.single().rows());
                 const double p = rng.uniform(1.0, 4.0);
                 return with_note({mccarty_check(c.single(), x, p)}, param_note("p", p));
               }});
  g.push_back({"lem7", {"lem7.refined", "lem7.outer"}, positive, [](InstanceContext& c, SplitMix64& rng) {
                 const std::size_t n = c.single().rows();
                 const Vector x = rng.unit_vector(n), y = rng.unit_vector(n);
                 const double p = static_cast<double>(rng.uniform_int(2, 4));
                 auto [refined, outer] = refined_cauchy_schwarz(c.single(), x, y, p);
                 return with_note({refined, outer}, param_note("p", p));
               }});
  g.push_back({"cor5", {"cor5"}, single, [](InstanceContext& c, SplitMix64& rng) {
                 const double p = static_cast<double>(rng.uniform_int(2, 3));
                 return with_note({cor5_bound(c.single(), p)}, param_note("p", p));
               }});
  g.push_back({"lem4.positivity", {"lem4.positivity"}, single, [](InstanceContext& c, SplitMix64& rng) {
                 const ComplexMatrix& t = c.single();
                 const auto bp = block_positivity_check(absolute_value(t), absolute_value(t.adjoint()), t, rng.next());
                 return std::vector<BoundRecord>{block_positivity_record(bp)};
               }});
  g.push_back({"eq2.1", {"eq2.1.first", "eq2.1.second"}, intertwined, [](InstanceContext& c, SplitMix64& rng) {
                 const double e = rng.uniform();
                 auto [first, second] =
                     thm1_bounds({c.pair().a, c.pair().b, PowerFunction(e), PowerFunction(1.0 - e), 1.0, std::nullopt});
                 return with_note({first, second}, param_note("f_exponent", e));
               }});
  g.push_back({"eq3.2", {"eq3.2"}, intertwined, [](InstanceContext& c, SplitMix64& rng) {
                 const double alpha = static_cast<double>(rng.uniform_int(0, 10)) / 10.0;
                 auto [first, second] = cor1_alpha_bounds(c.pair().a, c.pair().b, alpha);
                 return with_note({first, second}, param_note("alpha", alpha));
               }});
  g.push_back({"eq3.3", {"eq3.3"}, intertwined, [](InstanceContext& c, SplitMix64&) {
                 return std::vector<BoundRecord>{cor2_bound(c.pair().a, c.pair().b)};
               }});
  g.push_back({"eq3.4", {"eq3.4.first", "eq3.4.second", "eq3.5"}, intertwined,
               [](InstanceContext& c, SplitMix64& rng) {
                 static constexpr double combos[3][3] = {{2.0, 2.0, 1.0}, {2.0, 2.0, 2.0}, {3.0, 1.5, 2.0}};
                 const auto& k = combos[rng.uniform_int(0, 2)];
                 const double e = rng.uniform();
                 auto [r1, r2, r3] = thm2_bounds(
                     {c.pair().a, c.pair().b, PowerFunction(e), PowerFunction(1.0 - e), k[2], HolderPair(k[0], k[1])});
                 return with_note({r1, r2, r3}, param_note("alpha", k[0]) + " " + param_note("p", k[2]) + " " +
                                                    param_note("f_exponent", e));
               }});
  g.push_back({"lem5", {"lem5"}, intertwined, [](InstanceContext& c, SplitMix64& rng) {
                 const std::size_t n = c.pair().a.rows();
                 const Vector x = rng.complex_normal_vector(n), y = rng.complex_normal_vector(n);
                 const double e = rng.uniform();
                 return with_note({kittaneh_fg_gap(c.pair().a, c.pair().b, x, y, PowerFunction(e), PowerFunction(1.0 - e))},
                                  param_note("f_exponent", e));
               }});
  g.push_back({"eq3.6", {"eq3.6"}, commuting, [](InstanceContext& c, SplitMix64& rng) {
                 static constexpr double combos[3][3] = {{2.0, 2.0, 1.0}, {2.0, 2.0, 2.0}, {3.0, 1.5, 2.0}};
                 const auto& k = combos[rng.uniform_int(0, 2)];
                 const double e = rng.uniform();
                 return with_note({thm3_bound(c.pair().a, c.pair().b, PowerFunction(e), PowerFunction(1.0 - e), k[2],
                                              HolderPair(k[0], k[1]))},
                                  param_note("alpha", k[0]) + " " + param_note("p", k[2]) + " " +
                                      param_note("f_exponent", e));
               }});
  g.push_back({"thm4", {"thm4"}, contraction, [](InstanceContext& c, SplitMix64& rng) {
                 const double p = static_cast<double>(rng.uniform_int(2, 3));
                 return with_note({thm4_bound(c.pair().a, c.pair().b, p)}, param_note("p", p));
               }});
  g.push_back({"fact1", {"fact1"}, contraction, [](InstanceContext& c, SplitMix64&) {
                 return std::vector<BoundRecord>{norm_sum_estimate(c.pair().a, c.pair().b)};
               }});
  g.push_back({"fact2", {"fact2"}, contraction, [](InstanceContext& c, SplitMix64&) {
                 return std::vector<BoundRecord>{fact2_check(c.pair().a, c.pair().b)};
               }});
  g.push_back({"fact3", {"fact3"}, [](const GeneratorSpec& s) { return is_pair(s); },
               [](InstanceContext& c, SplitMix64&) {
                 return std::vector<BoundRecord>{spectral_radius_product_estimate(c.pair().a, c.pair().b)};
               }});
  g.push_back({"block",
               {"block.t1", "block.t2", "block.t3", "block.a", "block.b", "block.c", "block.d"},
               [](const GeneratorSpec& s) { return s.kind == K::block_partition && palindromic_sizes(s.block_sizes); },
               [](InstanceContext& c, SplitMix64& rng) {
                 const BlockPartition& p = c.partition();
                 const double tol = default_tolerance(operator_norm(p.assemble()));
                 const double e = rng.uniform();
                 std::vector<BoundRecord> out;
                 for (SchemeId s : {SchemeId::t1, SchemeId::t2, SchemeId::t3, SchemeId::a, SchemeId::b, SchemeId::c,
                                    SchemeId::d}) {
                   PinchScheme scheme{s, PowerFunction(e), PowerFunction(1.0 - e)};
                   out.push_back(block_bound(p, scheme, tol));
                 }
                 return with_note(out, param_note("f_exponent", e));
               }});
  g.push_back({"block.2x2", {"block.2x2"},
               [](const GeneratorSpec& s) {
                 return s.kind == K::block_partition && s.block_sizes.size() == 2 && palindromic_sizes(s.block_sizes);
               },
               [](InstanceContext& c, SplitMix64&) {
                 const BlockPartition& p = c.partition();
                 return std::vector<BoundRecord>{
                     two_by_two_closed_form(p, default_tolerance(operator_norm(p.assemble())))};
               }});
  return g;
}

// FNV-1a, for deriving per-group random streams from the instance seed.
inline std::uint64_t hash_name(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

inline const std::vector<BoundGroup>& bound_registry() {
  static const std::vector<BoundGroup> registry = detail::build_registry();
  return registry;
}

/// Every bound id the sweep engine knows, in registry order.
inline std::vector<std::string> known_bound_ids() {
  std::vector<std::string> ids;
  for (const auto& g : bound_registry()) ids.insert(ids.end(), g.ids.begin(), g.ids.end());
  return ids;
}

inline const BoundGroup& group_of(const std::string& id) {
  for (const auto& g : bound_registry())
    if (std::find(g.ids.begin(), g.ids.end(), id) != g.ids.end()) return g;
  throw Error(ErrorCode::UnknownBoundId, "unknown bound id '" + id + "'");
}

/// Reproduces one generated instance: kind, size, instance seed, scale.
struct InstanceDescriptor {
  GeneratorKind kind = GeneratorKind::ginibre;
  std::size_t dim = 0;
  std::vector<std::size_t> block_sizes;
  std::uint64_t seed = 0;
  double scale = 1.0;
};

inline Json to_json(const InstanceDescriptor& d) {
  Json j{{"kind", std::string(to_string(d.kind))}};
  if (d.kind == GeneratorKind::block_partition)
    j["block_sizes"] = d.block_sizes;
  else
    j["dim"] = d.dim;
  j["seed"] = d.seed;
  j["scale"] = d.scale;
  return j;
}

struct BoundAggregate {
  std::string bound_id;
  std::size_t trials = 0;
  std::size_t holds = 0;
  std::size_t expected_violations = 0;
  std::size_t unexpected_violations = 0;
  std::size_t precondition_failures = 0;
  std::size_t errors = 0;
  std::size_t near_misses = 0;
  double max_tightness = 0.0;
  std::optional<InstanceDescriptor> argmax;
  double slack_sum = 0.0;

  double mean_slack() const { return trials == 0 ? 0.0 : slack_sum / static_cast<double>(trials); }
};

struct ViolationDump {
  BoundRecord record;
  InstanceDescriptor where;
  Json instance;
};

struct SweepIssue {
  std::string bound_id;
  InstanceDescriptor where;
  std::string message;
};

struct SweepReport {
  Json config = Json::object();
  std::vector<BoundAggregate> bounds;  // sorted by bound_id
  std::vector<ViolationDump> violations;
  std::vector<SweepIssue> warnings;
  std::vector<SweepIssue> errors;

  std::size_t total_unexpected() const {
    std::size_t n = 0;
    for (const auto& b : bounds) n += b.unexpected_violations;
    return n;
  }
  std::size_t total_errors() const {
    std::size_t n = 0;
    for (const auto& b : bounds) n += b.errors;
    return n;
  }
  const BoundAggregate* find(std::string_view id) const {
    for (const auto& b : bounds)
      if (b.bound_id == id) return &b;
    return nullptr;
  }
};

inline Json instance_to_json(const Instance& inst) {
  if (const auto* m = std::get_if<ComplexMatrix>(&inst)) return Json{{"matrix", to_json(*m)}};
  if (const auto* p = std::get_if<MatrixPair>(&inst)) return Json{{"A", to_json(p->a)}, {"B", to_json(p->b)}};
  return Json{{"partition", to_json(std::get<BlockPartition>(inst))}};
}

namespace detail {

inline constexpr std::size_t warnings_per_bound = 10;

struct InstanceSlot {
  std::optional<InstanceContext> context;
  std::optional<std::string> generation_error;
  std::map<std::string, std::vector<BoundRecord>> results;
  std::map<std::string, std::string> group_errors;
};

inline Json spec_echo(const GeneratorSpec& s) {
  Json j{{"kind", std::string(to_string(s.kind))}};
  if (s.kind == GeneratorKind::block_partition)
    j["block_sizes"] = s.block_sizes;
  else
    j["dim"] = s.dim;
  j["seed"] = s.seed;
  j["scale"] = s.scale;
  return j;
}

}  // namespace detail

/// Bound b's trial t runs on applicable generator t mod m, instance t div m (m applicable
/// generators); instance k of a generator uses seed spec.seed + k. Instances and per-group
/// results are shared between bounds, so evaluation order does not affect any value.
inline SweepReport run_suite(const std::vector<GeneratorSpec>& generators, const std::vector<std::string>& bounds,
                             std::size_t trials_per, TolerancePolicy tol = {}) {
  SweepReport report;
  Json gens = Json::array();
  for (const auto& g : generators) gens.push_back(detail::spec_echo(g));
  report.config = Json{{"trials_per_bound", trials_per},
                       {"tolerance", {{"abs", tol.abs}, {"rel", tol.rel}}},
                       {"bounds", bounds},
                       {"generators", std::move(gens)}};

  std::vector<std::string> ids = bounds;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());

  // Resolve groups and applicability before doing any work.
  std::vector<std::pair<const BoundGroup*, std::vector<std::size_t>>> plan;
  for (const auto& id : ids) {
    const BoundGroup& g = group_of(id);
    std::vector<std::size_t> applicable;
    for (std::size_t s = 0; s < generators.size(); ++s)
      if (g.applicable(generators[s])) applicable.push_back(s);
    if (applicable.empty() && trials_per > 0)
      throw Error(ErrorCode::ArityMismatch, "no configured generator fits bound '" + id + "'");
    plan.emplace_back(&g, std::move(applicable));
  }

  std::map<std::pair<std::size_t, std::size_t>, detail::InstanceSlot> slots;
  auto slot_for = [&](std::size_t s, std::size_t k) -> detail::InstanceSlot& {
    auto& slot = slots[{s, k}];
    if (!slot.context && !slot.generation_error) {
      GeneratorSpec spec = generators[s];
      spec.seed += k;
      try {
        slot.context = InstanceContext{spec, generate(spec), std::nullopt};
      } catch (const Error& e) {
        slot.generation_error = e.what();
      }
    }
    return slot;
  };

  for (std::size_t b = 0; b < ids.size(); ++b) {
    const std::string& id = ids[b];
    const BoundGroup& group = *plan[b].first;
    const auto& applicable = plan[b].second;
    BoundAggregate agg;
    agg.bound_id = id;
    std::size_t warned = 0;

    for (std::size_t t = 0; t < trials_per; ++t) {
      const std::size_t s = applicable[t % applicable.size()];
      const std::size_t k = t / applicable.size();
      detail::InstanceSlot& slot = slot_for(s, k);
      GeneratorSpec spec = generators[s];
      spec.seed += k;
      const InstanceDescriptor where{spec.kind, spec.dim, spec.block_sizes, spec.seed, spec.scale};

      if (slot.generation_error) {
        ++agg.errors;
        report.errors.push_back({id, where, *slot.generation_error});
        continue;
      }
      if (!slot.results.count(group.name) && !slot.group_errors.count(group.name)) {
        SplitMix64 rng(spec.seed ^ detail::hash_name(group.name));
        try {
          slot.results[group.name] = group.evaluate(*slot.context, rng);
        } catch (const Error& e) {
          slot.group_errors[group.name] = e.what();
        }
      }
      if (auto it = slot.group_errors.find(group.name); it != slot.group_errors.end()) {
        ++agg.errors;
        report.errors.push_back({id, where, it->second});
        continue;
      }

      for (const BoundRecord& r : slot.results[group.name]) {
        if (r.bound_id != id) continue;
        if (!r.preconditions_met) {
          ++agg.precondition_failures;
          continue;
        }
        ++agg.trials;
        agg.slack_sum += r.slack;
        if (!agg.argmax || r.tightness > agg.max_tightness) {
          agg.max_tightness = r.tightness;
          agg.argmax = where;
        }
        if (holds(r, tol)) {
          ++agg.holds;
          if (near_miss(r, tol)) {
            ++agg.near_misses;
            if (warned++ < detail::warnings_per_bound)
              report.warnings.push_back({id, where, "near miss: lhs " + format_real(r.lhs) + " rhs " + format_real(r.rhs)});
          }
        } else if (id == expected_violation_id) {
          ++agg.expected_violations;
        } else {
          ++agg.unexpected_violations;
          report.violations.push_back({r, where, instance_to_json(slot.context->instance)});
        }
      }
    }
    report.bounds.push_back(std::move(agg));
  }
  return report;
}

inline Json to_json(const SweepReport& r) {
  Json bounds = Json::array();
  std::size_t trials = 0, expected = 0;
  for (const auto& b : r.bounds) {
    trials += b.trials;
    expected += b.expected_violations;
    Json j{{"bound_id", b.bound_id},
           {"trials", b.trials},
           {"holds", b.holds},
           {"expected_violations", b.expected_violations},
           {"unexpected_violations", b.unexpected_violations},
           {"precondition_failures", b.precondition_failures},
           {"errors", b.errors},
           {"near_misses", b.near_misses},
           {"max_tightness", b.max_tightness},
           {"argmax", b.argmax ? to_json(*b.argmax) : Json(nullptr)},
           {"mean_slack", b.mean_slack()}};
    bounds.push_back(std::move(j));
  }
  Json violations = Json::array();
  for (const auto& v : r.violations) {
    Json j = to_json(v.record);
    j["generator"] = to_json(v.where);
    j["instance"] = v.instance;
    violations.push_back(std::move(j));
  }
  auto issues = [](const std::vector<SweepIssue>& list) {
    Json out = Json::array();
    for (const auto& w : list) out.push_back({{"bound_id", w.bound_id}, {"generator", to_json(w.where)}, {"message", w.message}});
    return out;
  };
  return Json{{"config", r.config},
              {"summary",
               {{"bounds", r.bounds.size()},
                {"trials", trials},
                {"expected_violations", expected},
                {"unexpected_violations", r.total_unexpected()},
                {"errors", r.total_errors()}}},
              {"bounds", std::move(bounds)},
              {"violations", std::move(violations)},
              {"warnings", issues(r.warnings)},
              {"errors", issues(r.errors)}};
}

struct TightnessRow {
  std::string bound_id;
  double max_tightness = 0.0;
  std::size_t trials = 0;
  std::optional<InstanceDescriptor> argmax;
};

/// Bounds by descending max_tightness, ties by bound_id.
inline std::vector<TightnessRow> tightness_table(const SweepReport& report) {
  std::vector<TightnessRow> rows;
  for (const auto& b : report.bounds) rows.push_back({b.bound_id, b.max_tightness, b.trials, b.argmax});
  std::stable_sort(rows.begin(), rows.end(), [](const TightnessRow& x, const TightnessRow& y) {
    if (x.max_tightness != y.max_tightness) return x.max_tightness > y.max_tightness;
    return x.bound_id < y.bound_id;
  });
  return rows;
}

inline std::string tightness_csv(const std::vector<TightnessRow>& rows) {
  std::ostringstream out;
  out << "bound_id,max_tightness,trials,kind,size,seed,scale\n";
  for (const auto& r : rows) {
    out << r.bound_id << ',' << format_real(r.max_tightness) << ',' << r.trials << ',';
    if (r.argmax) {
      const auto& d = *r.argmax;
      out << to_string(d.kind) << ',';
      if (d.kind == GeneratorKind::block_partition) {
        for (std::size_t i = 0; i < d.block_sizes.size(); ++i) out << (i ? "x" : "") << d.block_sizes[i];
      } else {
        out << d.dim;
      }
      out << ',' << d.seed << ',' << format_real(d.scale);
    } else {
      out << ",,,";
    }
    out << '\n';
  }
  return out.str();
}

/// Suite configuration as read from JSON:
/// {"seed", "trials_per_bound", "tolerance": {"abs", "rel"},
///  "generators": [{"kind", "dims" | "block_sizes", "scale"}], "bounds": "all" | [ids],
///  "report", "csv"}
struct SuiteConfig {
  struct Generator {
    GeneratorKind kind = GeneratorKind::ginibre;
    std::vector<std::size_t> dims;
    std::vector<std::vector<std::size_t>> block_sizes;
    double scale = 1.0;
  };

  std::uint64_t seed = 20240101;
  std::size_t trials_per_bound = 100;
  TolerancePolicy tolerance;
  std::vector<Generator> generators;
  std::vector<std::string> bounds;
  std::string report_path = "report.json";
  std::string csv_path = "tightness.csv";
};

/// Seed offset between consecutive expanded generators; instance k adds k.
inline constexpr std::uint64_t generator_seed_stride = 1'000'003;

inline SuiteConfig parse_suite_config(const Json& j) {
  try {
    SuiteConfig c;
    if (!j.is_object()) throw Error(ErrorCode::ParseError, "suite config must be an object");
    c.seed = j.value("seed", c.seed);
    c.trials_per_bound = j.value("trials_per_bound", c.trials_per_bound);
    if (j.contains("tolerance")) {
      c.tolerance.abs = j["tolerance"].value("abs", c.tolerance.abs);
      c.tolerance.rel = j["tolerance"].value("rel", c.tolerance.rel);
    }
    for (const Json& g : j.at("generators")) {
      SuiteConfig::Generator gen;
      gen.kind = parse_generator_kind(g.at("kind").get<std::string>());
      gen.scale = g.value("scale", 1.0);
      if (gen.kind == GeneratorKind::block_partition) {
        gen.block_sizes = g.at("block_sizes").get<std::vector<std::vector<std::size_t>>>();
      } else if (g.contains("dims")) {
        gen.dims = g.at("dims").get<std::vector<std::size_t>>();
      } else {
        gen.dims = {g.at("dim").get<std::size_t>()};
      }
      c.generators.push_back(std::move(gen));
    }
    const Json& b = j.contains("bounds") ? j.at("bounds") : Json("all");
    if (b.is_string() && b.get<std::string>() == "all") {
      c.bounds = known_bound_ids();
    } else {
      c.bounds = b.get<std::vector<std::string>>();
      for (const auto& id : c.bounds) group_of(id);
    }
    c.report_path = j.value("report", c.report_path);
    c.csv_path = j.value("csv", c.csv_path);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

/// One GeneratorSpec per (generator, dim) or (generator, block_sizes), seeds spaced by the stride.
inline std::vector<GeneratorSpec> expand_generators(const SuiteConfig& c) {
  std::vector<GeneratorSpec> out;
  for (const auto& g : c.generators) {
    if (g.kind == GeneratorKind::block_partition) {
      for (const auto& sizes : g.block_sizes) out.push_back({g.kind, 0, sizes, 0, g.scale});
    } else {
      for (std::size_t d : g.dims) out.push_back({g.kind, d, {}, 0, g.scale});
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].seed = c.seed + generator_seed_stride * (i + 1);
  return out;
}

inline SweepReport run_suite(const SuiteConfig& c) {
  SweepReport r = run_suite(expand_generators(c), c.bounds, c.trials_per_bound, c.tolerance);
  r.config["seed"] = c.seed;
  return r;
}

}  // namespace numrad
