// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "loglift/doi.hpp"
#include "loglift/levels.hpp"
#include "loglift/source_index.hpp"

namespace loglift {

enum class Heuristic { WS, CTCH, IFS, KEYL, CNDS, KEYR, INH, TDIST };

std::string_view to_string(Heuristic heuristic) noexcept;

enum class PartitionPopulation { FeatureMethods, AllMethods };

struct HeuristicConfig {
  bool ws_enabled = true;
  std::optional<std::vector<std::string>> ws_categories;  // nullopt: framework default
  bool ctch = true;
  bool ifs = true;
  bool keyl = true;
  bool cnds = true;
  bool keyr = true;
  bool inh = true;
  std::optional<std::size_t> tdist;  // nullopt: unlimited
  std::vector<std::string> keyl_keywords{"fail", "disabl", "error", "exception"};
  std::vector<std::string> keyr_keywords{"stop", "shut", "kill", "dead", "not alive"};
  PartitionPopulation population = PartitionPopulation::FeatureMethods;

  bool operator==(const HeuristicConfig&) const = default;

  std::vector<std::string> categories(const LevelScheme& scheme) const;
  /// Levels a statement may be moved to, ascending.
  std::vector<std::string> considered_levels(const LevelScheme& scheme) const;
  /// Throws InvalidConfig on unknown categories, tdist 0 or empty keyword lists.
  void validate(const LevelScheme& scheme) const;
};

struct Partitioning {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::string> levels;  // considered levels, band i -> levels[i]

  std::size_t band_count() const noexcept { return levels.size(); }
  double width() const noexcept {
    return levels.empty() ? 0.0 : (hi - lo) / static_cast<double>(levels.size());
  }
};

/// Throws EmptyModel when `doi_values` is empty or no level remains after WS.
Partitioning build_partitioning(const std::vector<DoiValue>& doi_values, const LevelScheme& scheme,
                                const HeuristicConfig& config);

/// Band index for `v`. Interior boundaries belong to the upper band, hi to the last.
/// Throws OutOfRange when v lies outside [lo, hi].
std::size_t predict_band(const Partitioning& p, double v);
const std::string& predict_level(const Partitioning& p, double v);

struct Verdict {
  Heuristic heuristic = Heuristic::WS;
  bool passed = true;

  bool operator==(const Verdict&) const = default;
};

/// "pass" or "denied-by-<NAME>".
std::string to_string(const Verdict& verdict);

/// Methods each indexed method overrides within the indexed tree, matched by
/// name and parameter types through declared supertypes.
using OverrideMap = std::map<MethodIdentity, std::vector<MethodIdentity>>;
OverrideMap build_override_map(const SourceIndex& index);

/// Verdicts of every enabled, applicable heuristic in evaluation order.
/// `ancestor_proposals` holds the proposed levels of mismatched statements in
/// methods that the statement's method overrides.
std::vector<Verdict> evaluate_heuristics(const LoggingStatement& stmt, const std::string& current,
                                         const std::string& proposed,
                                         const HeuristicConfig& config, const LevelScheme& scheme,
                                         const std::vector<std::string>& ancestor_proposals = {});

/// Distance between two levels over the considered ordering (scheme ordering
/// when either level is outside it).
std::size_t level_distance(const std::string& a, const std::string& b,
                           const HeuristicConfig& config, const LevelScheme& scheme);

struct Suggestion {
  LoggingStatement statement;
  std::string current_level;
  std::string proposed_level;
  double doi = 0.0;
  std::size_t distance = 0;
  std::vector<Verdict> verdicts;

  bool transformable() const noexcept;
  /// First denying heuristic in evaluation order.
  std::optional<Heuristic> denied_by() const noexcept;
};

enum class OutcomeStatus { Failure, NonFeature, Matched, Suggested };

std::string_view to_string(OutcomeStatus status) noexcept;

struct StatementOutcome {
  OutcomeStatus status = OutcomeStatus::Failure;
  LoggingStatement statement;
  double doi = 0.0;
  std::optional<std::string> predicted_level;
  std::optional<Suggestion> candidate;  // set for NonFeature and Suggested
};

struct LevelingResult {
  std::optional<Partitioning> partitioning;  // absent when nothing is analyzable
  std::vector<StatementOutcome> outcomes;    // one per indexed statement, index order

  std::vector<Suggestion> suggestions() const;
  std::size_t count(OutcomeStatus status) const;
};

LevelingResult assess(const SourceIndex& index, const DoiModel& model, const LevelScheme& scheme,
                      const HeuristicConfig& config, const DoiConfig& doi_config = {});

/// Transformable suggestions sorted by file path and line.
std::vector<Suggestion> suggest(const SourceIndex& index, const DoiModel& model,
                                const LevelScheme& scheme, const HeuristicConfig& config,
                                const DoiConfig& doi_config = {});

}  // namespace loglift
