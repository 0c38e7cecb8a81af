// SPDX-License-Identifier: Apache-2.0

#include "loglift/reporter.hpp"

#include <algorithm>
#include <cmath>
#include <regex>
#include <sstream>

#include "json.hpp"

#include "loglift/error.hpp"

using nlohmann::ordered_json;

namespace loglift {

double normalized_entropy(const LevelHistogram& histogram, const LevelScheme& scheme) {
  std::size_t total = 0;
  for (const auto& level : scheme.levels()) {
    auto it = histogram.find(level);
    if (it != histogram.end()) total += it->second;
  }
  if (total == 0) throw Error(ErrorKind::EmptyHistogram, "histogram has no entries");
  if (scheme.size() < 2) return 0.0;
  double h = 0.0;
  for (const auto& level : scheme.levels()) {
    auto it = histogram.find(level);
    if (it == histogram.end() || it->second == 0) continue;
    double p = static_cast<double>(it->second) / static_cast<double>(total);
    h -= p * std::log(p);
  }
  return std::clamp(h / std::log(static_cast<double>(scheme.size())), 0.0, 1.0);
}

DistributionChange distribution_change(const LevelHistogram& before, const LevelHistogram& after,
                                       const LevelScheme& scheme) {
  DistributionChange d;
  d.entropy_before = normalized_entropy(before, scheme);
  d.entropy_after = normalized_entropy(after, scheme);
  d.relative_change = (d.entropy_after - d.entropy_before) / std::max(d.entropy_before, 1e-12);
  return d;
}

namespace {

std::regex compile_pattern(const std::string& pattern) {
  try {
    return std::regex(pattern, std::regex::ECMAScript | std::regex::icase);
  } catch (const std::regex_error& e) {
    throw Error(ErrorKind::InvalidConfig, "bad bug pattern '" + pattern + "': " + e.what());
  }
}

std::set<std::string> bug_fix_commits(const std::vector<CommitRecord>& commits,
                                      const std::string& pattern) {
  auto re = compile_pattern(pattern);
  std::set<std::string> ids;
  for (const auto& c : commits)
    if (std::regex_search(c.message, re)) ids.insert(c.id);
  return ids;
}

}  // namespace

bool is_bug_fix_message(const std::string& message, const std::string& pattern) {
  return std::regex_search(message, compile_pattern(pattern));
}

std::set<MethodIdentity> buggy_methods(const std::vector<CommitRecord>& commits,
                                       const std::vector<ChangeEvent>& events,
                                       const std::string& pattern) {
  auto fixes = bug_fix_commits(commits, pattern);
  std::set<MethodIdentity> out;
  for (const auto& e : events)
    if (fixes.count(e.commit)) out.insert(e.method);
  return out;
}

std::string_view to_string(BugFocusScope scope) noexcept {
  return scope == BugFocusScope::Suggestions ? "suggestions" : "feature-logs";
}

BugFocusScope parse_bug_focus_scope(std::string_view text) {
  if (text == "suggestions") return BugFocusScope::Suggestions;
  if (text == "feature-logs") return BugFocusScope::FeatureLogs;
  throw Error(ErrorKind::InvalidConfig, "unknown bug focus scope '" + std::string(text) + "'");
}

std::optional<double> bug_focus(const std::vector<CommitRecord>& commits,
                                const std::vector<ChangeEvent>& events,
                                const std::vector<Suggestion>& suggestions,
                                const std::string& pattern, const LevelScheme& scheme) {
  auto buggy = buggy_methods(commits, events, pattern);
  if (suggestions.empty()) return std::nullopt;
  std::size_t ideal = 0;
  for (const auto& s : suggestions) {
    auto cur = scheme.ordinal(s.current_level);
    auto prop = scheme.ordinal(s.proposed_level);
    bool in_bug = buggy.count(s.statement.enclosing_method) > 0;
    if (in_bug ? prop > cur : prop < cur) ++ideal;
  }
  return static_cast<double>(ideal) / static_cast<double>(suggestions.size());
}

std::optional<double> bug_focus_feature_logs(const std::vector<CommitRecord>& commits,
                                             const std::vector<ChangeEvent>& events,
                                             const LevelingResult& leveling,
                                             const std::string& pattern, const LevelScheme& scheme,
                                             const HeuristicConfig& config) {
  auto buggy = buggy_methods(commits, events, pattern);
  auto considered = config.considered_levels(scheme);
  std::size_t total = 0, ideal = 0;
  for (const auto& o : leveling.outcomes) {
    if (o.status != OutcomeStatus::Matched && o.status != OutcomeStatus::Suggested) continue;
    const auto& current = *o.statement.level;
    auto pos = std::find(considered.begin(), considered.end(), current);
    if (pos == considered.end()) continue;
    bool in_bug = buggy.count(o.statement.enclosing_method) > 0;
    bool can_move = in_bug ? pos + 1 != considered.end() : pos != considered.begin();
    if (!can_move) continue;
    ++total;
    if (o.status == OutcomeStatus::Suggested) {
      auto cur = scheme.ordinal(current);
      auto prop = scheme.ordinal(o.candidate->proposed_level);
      if (in_bug ? prop > cur : prop < cur) ++ideal;
    }
  }
  if (total == 0) return std::nullopt;
  return static_cast<double>(ideal) / static_cast<double>(total);
}

RunReport build_report(const ReportInputs& in) {
  RunReport r;
  r.project = in.project;
  r.framework = std::string(to_string(in.scheme.framework()));
  r.total_statements = in.index.total_statements();
  r.failures = in.index.failures;
  r.analyzable = in.index.analyzable();
  r.analyzed_fraction = in.index.analyzed_fraction();
  r.partitioning = in.leveling.partitioning;
  r.bug_focus_scope = in.bug_focus_scope;

  for (const auto& level : in.scheme.levels()) {
    r.distribution_before[level] = 0;
    r.distribution_after[level] = 0;
  }
  std::size_t lowered = 0;
  for (const auto& o : in.leveling.outcomes) {
    if (o.statement.analyzable()) {
      const auto& current = *o.statement.level;
      ++r.distribution_before[current];
      const bool moves = o.status == OutcomeStatus::Suggested;
      ++r.distribution_after[moves ? o.candidate->proposed_level : current];
    }
    switch (o.status) {
      case OutcomeStatus::Failure: break;
      case OutcomeStatus::Matched: ++r.matched; break;
      case OutcomeStatus::NonFeature: {
        ++r.nonfeature_count;
        auto h = o.candidate->denied_by();
        ++r.nonfeature_by_heuristic[std::string(to_string(*h))];
        r.denied.push_back(*o.candidate);
        break;
      }
      case OutcomeStatus::Suggested: {
        const auto& s = *o.candidate;
        ++r.distance_histogram[s.distance];
        if (in.scheme.ordinal(s.proposed_level) < in.scheme.ordinal(s.current_level)) ++lowered;
        break;
      }
    }
  }
  r.suggestions = in.leveling.suggestions();
  r.suggestions_emitted = r.suggestions.size();
  r.feature_count = r.matched + r.suggestions_emitted;
  r.lowered_fraction = r.suggestions_emitted == 0
                           ? 0.0
                           : static_cast<double>(lowered) /
                                 static_cast<double>(r.suggestions_emitted);
  if (r.analyzable > 0)
    r.distribution = distribution_change(r.distribution_before, r.distribution_after, in.scheme);

  if (in.bug_focus_scope == BugFocusScope::Suggestions)
    r.bug_focus = bug_focus(in.mined.commits, in.mined.events, r.suggestions, in.bug_pattern,
                            in.scheme);
  else
    r.bug_focus = bug_focus_feature_logs(in.mined.commits, in.mined.events, in.leveling,
                                         in.bug_pattern, in.scheme, in.heuristics);

  auto& d = r.diagnostics;
  d.commits_analyzed = in.mined.diagnostics.commits_analyzed;
  d.merge_commits_skipped = in.mined.diagnostics.merge_commits_skipped;
  d.events = in.mined.events.size();
  d.events_dropped = in.mined.diagnostics.events_dropped;
  d.renames = in.mined.diagnostics.renames;
  d.historical_unparsable_files = in.mined.diagnostics.unparsable_files;
  d.unparsable_files = in.index.unparsable_files;
  d.calls_outside_methods = in.index.calls_outside_methods;
  d.methods_indexed = in.index.methods.size();
  if (in.heuristics.inh)
    for (const auto& [m, list] : build_override_map(in.index)) d.override_links += list.size();
  return r;
}

namespace {

ordered_json suggestion_json(const Suggestion& s) {
  ordered_json j;
  const auto& st = s.statement;
  j["file"] = st.location.file_path;
  j["line"] = st.location.line;
  j["column"] = st.location.column;
  j["method"] = st.enclosing_method.to_string();
  j["flavor"] = std::string(to_string(st.flavor));
  j["current_level"] = s.current_level;
  j["proposed_level"] = s.proposed_level;
  j["doi"] = s.doi;
  j["distance"] = s.distance;
  ordered_json verdicts = ordered_json::array();
  for (const auto& v : s.verdicts) {
    verdicts.push_back({{"heuristic", std::string(to_string(v.heuristic))},
                        {"outcome", to_string(v)}});
  }
  j["verdicts"] = std::move(verdicts);
  if (auto h = s.denied_by())
    j["denied_by"] = std::string(to_string(*h));
  return j;
}

ordered_json histogram_json(const LevelHistogram& h, const std::vector<std::string>& order) {
  ordered_json j = ordered_json::object();
  for (const auto& level : order) {
    auto it = h.find(level);
    j[level] = it == h.end() ? 0 : it->second;
  }
  return j;
}

ordered_json report_json(const RunReport& r) {
  const auto scheme = LevelScheme::for_framework(parse_framework(r.framework));
  ordered_json j;
  j["project"] = r.project;
  j["framework"] = r.framework;
  j["total_statements"] = r.total_statements;
  j["analyzable"] = r.analyzable;
  j["failures"] = r.failures;
  j["analyzed_fraction"] = r.analyzed_fraction;
  j["feature_count"] = r.feature_count;
  j["nonfeature_count"] = r.nonfeature_count;
  ordered_json by_h = ordered_json::object();
  for (const auto& [h, n] : r.nonfeature_by_heuristic) by_h[h] = n;
  j["nonfeature_by_heuristic"] = std::move(by_h);
  j["matched"] = r.matched;
  j["suggestions_emitted"] = r.suggestions_emitted;
  j["lowered_fraction"] = r.lowered_fraction;
  ordered_json dist;
  dist["before"] = histogram_json(r.distribution_before, scheme.levels());
  dist["after"] = histogram_json(r.distribution_after, scheme.levels());
  if (r.distribution) {
    dist["entropy_before"] = r.distribution->entropy_before;
    dist["entropy_after"] = r.distribution->entropy_after;
    dist["relative_change"] = r.distribution->relative_change;
  } else {
    dist["entropy_before"] = nullptr;
    dist["entropy_after"] = nullptr;
    dist["relative_change"] = nullptr;
  }
  j["distribution"] = std::move(dist);
  ordered_json dh = ordered_json::object();
  for (const auto& [d, n] : r.distance_histogram) dh[std::to_string(d)] = n;
  j["distance_histogram"] = std::move(dh);
  j["bug_focus"] = r.bug_focus ? ordered_json(*r.bug_focus) : ordered_json(nullptr);
  j["bug_focus_scope"] = std::string(to_string(r.bug_focus_scope));
  if (r.partitioning) {
    j["partitioning"] = {{"lo", r.partitioning->lo},
                         {"hi", r.partitioning->hi},
                         {"width", r.partitioning->width()},
                         {"levels", r.partitioning->levels}};
  } else {
    j["partitioning"] = nullptr;
  }
  ordered_json sugg = ordered_json::array();
  for (const auto& s : r.suggestions) sugg.push_back(suggestion_json(s));
  j["suggestions"] = std::move(sugg);
  ordered_json denied = ordered_json::array();
  for (const auto& s : r.denied) denied.push_back(suggestion_json(s));
  j["denied"] = std::move(denied);
  const auto& d = r.diagnostics;
  j["diagnostics"] = {{"commits_analyzed", d.commits_analyzed},
                      {"merge_commits_skipped", d.merge_commits_skipped},
                      {"events", d.events},
                      {"events_dropped", d.events_dropped},
                      {"renames", d.renames},
                      {"historical_unparsable_files", d.historical_unparsable_files},
                      {"unparsable_files", d.unparsable_files},
                      {"calls_outside_methods", d.calls_outside_methods},
                      {"methods_indexed", d.methods_indexed},
                      {"override_links", d.override_links},
                      {"logger_recognition", "name-and-type-pattern"},
                      {"override_scope", "indexed-tree"}};
  return j;
}

std::string percent(double v) {
  std::ostringstream ss;
  ss.setf(std::ios::fixed);
  ss.precision(2);
  ss << v * 100.0 << "%";
  return ss.str();
}

}  // namespace

std::string render_json(const std::vector<RunReport>& reports) {
  ordered_json doc;
  doc["schema_version"] = 1;
  ordered_json projects = ordered_json::array();
  for (const auto& r : reports) projects.push_back(report_json(r));
  doc["projects"] = std::move(projects);
  return doc.dump(2) + "\n";
}

std::string render_text(const RunReport& r) {
  std::ostringstream out;
  out << "project: " << r.project << " (" << r.framework << ")\n";
  out << "statements: " << r.total_statements << " total, " << r.analyzable << " analyzable ("
      << percent(r.analyzed_fraction) << "), " << r.failures << " failures\n";
  out << "feature logs: " << r.feature_count << " (" << r.matched << " matched, "
      << r.suggestions_emitted << " suggested)\n";
  out << "non-feature logs: " << r.nonfeature_count;
  if (!r.nonfeature_by_heuristic.empty()) {
    out << " (";
    bool first = true;
    for (const auto& [h, n] : r.nonfeature_by_heuristic) {
      out << (first ? "" : ", ") << h << " " << n;
      first = false;
    }
    out << ")";
  }
  out << "\n";
  out << "lowered: " << percent(r.lowered_fraction) << "\n";
  if (r.distribution) {
    std::ostringstream e;
    e.setf(std::ios::fixed);
    e.precision(4);
    e << r.distribution->entropy_before << " -> " << r.distribution->entropy_after;
    out << "entropy: " << e.str() << " (" << percent(r.distribution->relative_change) << ")\n";
  }
  out << "bug focus (" << to_string(r.bug_focus_scope)
      << "): " << (r.bug_focus ? percent(*r.bug_focus) : std::string("n/a")) << "\n";
  out << "history: " << r.diagnostics.commits_analyzed << " commits, " << r.diagnostics.events
      << " events, " << r.diagnostics.renames << " renames\n";
  return out.str();
}

}  // namespace loglift
