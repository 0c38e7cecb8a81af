// SPDX-License-Identifier: Apache-2.0

#include "loglift/leveler.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <tuple>

#include "loglift/error.hpp"

namespace loglift {

std::string_view to_string(Heuristic heuristic) noexcept {
  switch (heuristic) {
    case Heuristic::WS: return "WS";
    case Heuristic::CTCH: return "CTCH";
    case Heuristic::IFS: return "IFS";
    case Heuristic::KEYL: return "KEYL";
    case Heuristic::CNDS: return "CNDS";
    case Heuristic::KEYR: return "KEYR";
    case Heuristic::INH: return "INH";
    case Heuristic::TDIST: return "TDIST";
  }
  return "?";
}

std::string_view to_string(OutcomeStatus status) noexcept {
  switch (status) {
    case OutcomeStatus::Failure: return "failure";
    case OutcomeStatus::NonFeature: return "non-feature";
    case OutcomeStatus::Matched: return "matched";
    case OutcomeStatus::Suggested: return "suggested";
  }
  return "?";
}

std::string to_string(const Verdict& verdict) {
  if (verdict.passed) return "pass";
  return "denied-by-" + std::string(to_string(verdict.heuristic));
}

std::vector<std::string> HeuristicConfig::categories(const LevelScheme& scheme) const {
  return ws_categories ? *ws_categories : scheme.default_categories();
}

std::vector<std::string> HeuristicConfig::considered_levels(const LevelScheme& scheme) const {
  if (!ws_enabled) return scheme.levels();
  auto cats = categories(scheme);
  std::vector<std::string> out;
  for (const auto& l : scheme.levels())
    if (std::find(cats.begin(), cats.end(), l) == cats.end()) out.push_back(l);
  return out;
}

void HeuristicConfig::validate(const LevelScheme& scheme) const {
  for (const auto& c : categories(scheme))
    if (!scheme.contains(c)) throw Error(ErrorKind::InvalidConfig, "unknown category level " + c);
  if (tdist && *tdist == 0) throw Error(ErrorKind::InvalidConfig, "tdist must be at least 1");
  if (keyl && keyl_keywords.empty())
    throw Error(ErrorKind::InvalidConfig, "keyl keyword list is empty");
  if (keyr && keyr_keywords.empty())
    throw Error(ErrorKind::InvalidConfig, "keyr keyword list is empty");
  if (considered_levels(scheme).empty())
    throw Error(ErrorKind::InvalidConfig, "every level is a category");
}

Partitioning build_partitioning(const std::vector<DoiValue>& doi_values, const LevelScheme& scheme,
                                const HeuristicConfig& config) {
  if (doi_values.empty()) throw Error(ErrorKind::EmptyModel, "no DOI values to partition");
  Partitioning p;
  p.levels = config.considered_levels(scheme);
  if (p.levels.empty()) throw Error(ErrorKind::EmptyModel, "no considered levels");
  auto [mn, mx] = std::minmax_element(doi_values.begin(), doi_values.end(),
                                      [](const auto& a, const auto& b) { return a.value < b.value; });
  p.lo = mn->value;
  p.hi = mx->value;
  return p;
}

std::size_t predict_band(const Partitioning& p, double v) {
  if (p.levels.empty()) throw Error(ErrorKind::EmptyModel, "partitioning has no levels");
  if (!(v >= p.lo && v <= p.hi))
    throw Error(ErrorKind::OutOfRange, "DOI value " + std::to_string(v) + " outside [" +
                                           std::to_string(p.lo) + ", " + std::to_string(p.hi) +
                                           "]");
  const std::size_t bands = p.levels.size();
  const double w = p.width();
  if (!(w > 0)) return 0;
  if (v == p.hi) return bands - 1;
  auto i = static_cast<std::size_t>(std::floor((v - p.lo) / w));
  i = std::min(i, bands - 1);
  // Division can land one band off near a boundary; settle on the bounds directly.
  while (i + 1 < bands && v >= p.lo + static_cast<double>(i + 1) * w) ++i;
  while (i > 0 && v < p.lo + static_cast<double>(i) * w) --i;
  return i;
}

const std::string& predict_level(const Partitioning& p, double v) {
  return p.levels[predict_band(p, v)];
}

OverrideMap build_override_map(const SourceIndex& index) {
  using TypeKey = std::pair<std::string, std::string>;  // file, qualified name
  auto simple = [](const std::string& qualified) {
    auto dot = qualified.rfind('.');
    return dot == std::string::npos ? qualified : qualified.substr(dot + 1);
  };

  std::map<std::string, std::vector<TypeKey>> by_simple;
  std::map<TypeKey, const IndexedType*> types;
  for (const auto& t : index.types) {
    TypeKey key{t.file_path, t.name};
    types.emplace(key, &t);
    by_simple[simple(t.name)].push_back(key);
  }
  std::map<TypeKey, std::vector<const IndexedMethod*>> methods_of;
  for (const auto& m : index.methods)
    methods_of[{m.id.file_path, m.declaring_type}].push_back(&m);

  OverrideMap out;
  for (const auto& m : index.methods) {
    TypeKey own{m.id.file_path, m.declaring_type};
    auto self = types.find(own);
    if (self == types.end()) continue;
    std::set<TypeKey> seen{own};
    std::deque<const IndexedType*> queue{self->second};
    std::vector<MethodIdentity> overridden;
    while (!queue.empty()) {
      const IndexedType* t = queue.front();
      queue.pop_front();
      for (const auto& super : t->supertypes) {
        auto it = by_simple.find(simple(super));
        if (it == by_simple.end()) continue;
        for (const auto& key : it->second) {
          if (!seen.insert(key).second) continue;
          queue.push_back(types.at(key));
          auto ms = methods_of.find(key);
          if (ms == methods_of.end()) continue;
          for (const auto* am : ms->second)
            if (am->name == m.name && am->parameter_types == m.parameter_types)
              overridden.push_back(am->id);
        }
      }
    }
    if (!overridden.empty()) {
      std::sort(overridden.begin(), overridden.end());
      out.emplace(m.id, std::move(overridden));
    }
  }
  return out;
}

std::size_t level_distance(const std::string& a, const std::string& b,
                           const HeuristicConfig& config, const LevelScheme& scheme) {
  auto considered = config.considered_levels(scheme);
  auto ia = std::find(considered.begin(), considered.end(), a);
  auto ib = std::find(considered.begin(), considered.end(), b);
  if (ia != considered.end() && ib != considered.end())
    return static_cast<std::size_t>(std::abs(ia - ib));
  auto oa = scheme.ordinal(a), ob = scheme.ordinal(b);
  return oa > ob ? oa - ob : ob - oa;
}

std::vector<Verdict> evaluate_heuristics(const LoggingStatement& stmt, const std::string& current,
                                         const std::string& proposed,
                                         const HeuristicConfig& config, const LevelScheme& scheme,
                                         const std::vector<std::string>& ancestor_proposals) {
  const auto cur = scheme.ordinal(current);
  const auto prop = scheme.ordinal(proposed);
  const bool lowering = prop < cur;
  const bool raising = prop > cur;
  std::vector<Verdict> out;
  auto add = [&out](Heuristic h, bool deny) { out.push_back(Verdict{h, !deny}); };

  if (config.ws_enabled) {
    auto cats = config.categories(scheme);
    add(Heuristic::WS, std::find(cats.begin(), cats.end(), current) != cats.end());
  }
  if (config.ctch) add(Heuristic::CTCH, lowering && stmt.in_catch);
  if (config.ifs) add(Heuristic::IFS, lowering && stmt.first_in_branch);
  if (config.keyl)
    add(Heuristic::KEYL, lowering && message_keywords_present(stmt, config.keyl_keywords));
  if (config.cnds) add(Heuristic::CNDS, cur != prop && stmt.level_guarded);
  if (config.keyr && !config.ws_enabled) {
    auto critical = scheme.critical_levels();
    bool to_critical = std::find(critical.begin(), critical.end(), proposed) != critical.end();
    add(Heuristic::KEYR,
        raising && to_critical && !message_keywords_present(stmt, config.keyr_keywords));
  }
  if (config.inh) {
    bool conflict = std::any_of(ancestor_proposals.begin(), ancestor_proposals.end(),
                                [&](const std::string& l) { return l != proposed; });
    add(Heuristic::INH, conflict);
  }
  if (config.tdist) add(Heuristic::TDIST, level_distance(current, proposed, config, scheme) > *config.tdist);
  return out;
}

bool Suggestion::transformable() const noexcept {
  return proposed_level != current_level &&
         std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.passed; });
}

std::optional<Heuristic> Suggestion::denied_by() const noexcept {
  for (const auto& v : verdicts)
    if (!v.passed) return v.heuristic;
  return std::nullopt;
}

std::vector<Suggestion> LevelingResult::suggestions() const {
  std::vector<Suggestion> out;
  for (const auto& o : outcomes)
    if (o.status == OutcomeStatus::Suggested) out.push_back(*o.candidate);
  std::stable_sort(out.begin(), out.end(), [](const Suggestion& a, const Suggestion& b) {
    const auto& la = a.statement.location;
    const auto& lb = b.statement.location;
    return std::tie(la.file_path, la.line, la.offset) < std::tie(lb.file_path, lb.line, lb.offset);
  });
  return out;
}

std::size_t LevelingResult::count(OutcomeStatus status) const {
  return static_cast<std::size_t>(std::count_if(
      outcomes.begin(), outcomes.end(), [status](const auto& o) { return o.status == status; }));
}

LevelingResult assess(const SourceIndex& index, const DoiModel& model, const LevelScheme& scheme,
                      const HeuristicConfig& config, const DoiConfig& doi_config) {
  config.validate(scheme);
  LevelingResult result;

  std::set<MethodIdentity> population;
  for (const auto& s : index.statements)
    if (s.analyzable()) population.insert(s.enclosing_method);
  const bool any_analyzable = !population.empty();
  if (config.population == PartitionPopulation::AllMethods)
    for (const auto& m : index.methods) population.insert(m.id);

  if (any_analyzable) {
    std::vector<DoiValue> values;
    values.reserve(population.size());
    for (const auto& m : population) values.push_back(doi_of(model, m, doi_config));
    result.partitioning = build_partitioning(values, scheme, config);
  }

  // Predictions first; INH needs the mismatches of every overridden method.
  std::map<MethodIdentity, std::vector<std::string>> mismatches;
  result.outcomes.reserve(index.statements.size());
  for (const auto& s : index.statements) {
    StatementOutcome o;
    o.statement = s;
    if (s.analyzable() && result.partitioning) {
      const auto& p = *result.partitioning;
      o.doi = doi_of(model, s.enclosing_method, doi_config).value;
      o.predicted_level = predict_level(p, std::clamp(o.doi, p.lo, p.hi));
      if (*o.predicted_level != *s.level) mismatches[s.enclosing_method].push_back(*o.predicted_level);
    }
    result.outcomes.push_back(std::move(o));
  }

  const OverrideMap overrides = config.inh ? build_override_map(index) : OverrideMap{};
  for (auto& o : result.outcomes) {
    if (!o.predicted_level) continue;
    const std::string& current = *o.statement.level;
    if (*o.predicted_level == current) {
      o.status = OutcomeStatus::Matched;
      continue;
    }
    std::vector<std::string> ancestor;
    if (auto it = overrides.find(o.statement.enclosing_method); it != overrides.end())
      for (const auto& a : it->second)
        if (auto mm = mismatches.find(a); mm != mismatches.end())
          ancestor.insert(ancestor.end(), mm->second.begin(), mm->second.end());

    Suggestion s;
    s.statement = o.statement;
    s.current_level = current;
    s.proposed_level = *o.predicted_level;
    s.doi = o.doi;
    s.distance = level_distance(current, s.proposed_level, config, scheme);
    s.verdicts = evaluate_heuristics(o.statement, current, s.proposed_level, config, scheme, ancestor);
    o.status = s.transformable() ? OutcomeStatus::Suggested : OutcomeStatus::NonFeature;
    o.candidate = std::move(s);
  }
  return result;
}

std::vector<Suggestion> suggest(const SourceIndex& index, const DoiModel& model,
                                const LevelScheme& scheme, const HeuristicConfig& config,
                                const DoiConfig& doi_config) {
  return assess(index, model, scheme, config, doi_config).suggestions();
}

}  // namespace loglift
