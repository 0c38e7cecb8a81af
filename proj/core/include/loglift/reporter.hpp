// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "loglift/leveler.hpp"
#include "loglift/repo_miner.hpp"
#include "loglift/source_index.hpp"

namespace loglift {

/// Level name -> count. Levels absent from the map count as zero.
using LevelHistogram = std::map<std::string, std::size_t>;

/// Shannon entropy divided by log(|levels|), in [0, 1]. Throws EmptyHistogram on zero total.
double normalized_entropy(const LevelHistogram& histogram, const LevelScheme& scheme);

struct DistributionChange {
  double entropy_before = 0.0;
  double entropy_after = 0.0;
  double relative_change = 0.0;  // (after - before) / max(before, 1e-12)
};

DistributionChange distribution_change(const LevelHistogram& before, const LevelHistogram& after,
                                       const LevelScheme& scheme);

inline constexpr std::string_view kDefaultBugPattern =
    R"(\b(fix(e[sd]|ing)?|bugs?|defects?|faults?|repair(s|ed|ing)?)\b)";

/// Case-insensitive search of `pattern` in `message`. Throws InvalidConfig on a bad pattern.
bool is_bug_fix_message(const std::string& message, const std::string& pattern);

/// Methods changed by at least one commit whose message matches `pattern`.
std::set<MethodIdentity> buggy_methods(const std::vector<CommitRecord>& commits,
                                       const std::vector<ChangeEvent>& events,
                                       const std::string& pattern);

enum class BugFocusScope { Suggestions, FeatureLogs };

std::string_view to_string(BugFocusScope scope) noexcept;
BugFocusScope parse_bug_focus_scope(std::string_view text);

/// Share of emitted suggestions that move buggy code up or other code down.
/// Absent when there are no suggestions.
std::optional<double> bug_focus(const std::vector<CommitRecord>& commits,
                                const std::vector<ChangeEvent>& events,
                                const std::vector<Suggestion>& suggestions,
                                const std::string& pattern, const LevelScheme& scheme);

/// Same decision rule over every feature log that has a strict move available in
/// its ideal direction within the considered levels.
std::optional<double> bug_focus_feature_logs(const std::vector<CommitRecord>& commits,
                                             const std::vector<ChangeEvent>& events,
                                             const LevelingResult& leveling,
                                             const std::string& pattern, const LevelScheme& scheme,
                                             const HeuristicConfig& config);

struct RunDiagnostics {
  std::size_t commits_analyzed = 0;
  std::size_t merge_commits_skipped = 0;
  std::size_t events = 0;
  std::size_t events_dropped = 0;
  std::size_t renames = 0;
  std::size_t historical_unparsable_files = 0;
  std::vector<std::string> unparsable_files;
  std::size_t calls_outside_methods = 0;
  std::size_t methods_indexed = 0;
  std::size_t override_links = 0;
};

struct RunReport {
  std::string project;
  std::string framework;
  std::size_t total_statements = 0;
  std::size_t analyzable = 0;
  std::size_t failures = 0;
  double analyzed_fraction = 1.0;
  std::size_t feature_count = 0;
  std::size_t nonfeature_count = 0;
  std::map<std::string, std::size_t> nonfeature_by_heuristic;
  std::size_t matched = 0;
  std::size_t suggestions_emitted = 0;
  double lowered_fraction = 0.0;
  LevelHistogram distribution_before;
  LevelHistogram distribution_after;
  std::optional<DistributionChange> distribution;
  std::map<std::size_t, std::size_t> distance_histogram;
  std::optional<double> bug_focus;
  BugFocusScope bug_focus_scope = BugFocusScope::Suggestions;
  std::optional<Partitioning> partitioning;
  std::vector<Suggestion> suggestions;
  std::vector<Suggestion> denied;
  RunDiagnostics diagnostics;
};

struct ReportInputs {
  std::string project;
  const LevelScheme& scheme;
  const HeuristicConfig& heuristics;
  const MineResult& mined;
  const SourceIndex& index;
  const LevelingResult& leveling;
  std::string bug_pattern{kDefaultBugPattern};
  BugFocusScope bug_focus_scope = BugFocusScope::Suggestions;
};

RunReport build_report(const ReportInputs& inputs);

/// Versioned JSON document for one or more project reports. Deterministic.
std::string render_json(const std::vector<RunReport>& reports);

/// Short human-readable summary.
std::string render_text(const RunReport& report);

}  // namespace loglift
