// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loglift/config.hpp"
#include "loglift/doi.hpp"
#include "loglift/leveler.hpp"
#include "loglift/repo_miner.hpp"
#include "loglift/reporter.hpp"
#include "loglift/rewriter.hpp"
#include "loglift/source_index.hpp"

namespace loglift {

using ConfigOverrides = std::vector<std::pair<std::string, std::string>>;

/// Config file values (project dir first, then repository root) with
/// `overrides` applied on top, validated.
Config resolve_config(const std::filesystem::path& project_dir,
                      const std::filesystem::path& repo_root, const ConfigOverrides& overrides);

struct ProjectRun {
  std::filesystem::path project_dir;
  std::filesystem::path repo_root;
  std::string path_prefix;  // project location inside the repository, "" or "dir/"
  Config config;
  MineResult mined;  // events restricted to the project's methods
  SourceIndex index;
  DoiModel model;
  LevelingResult leveling;
  RunReport report;
  bool reused_history = false;  // mined earlier in this session
};

/// Keeps mined history per repository so projects sharing one are mined once.
class Session {
 public:
  /// Progress messages (cache hits, reuse) go to `log` when set.
  explicit Session(std::ostream* log = nullptr) : log_(log) {}

  ProjectRun analyze(const std::filesystem::path& project, const ConfigOverrides& overrides = {});

  std::size_t repositories_mined() const noexcept { return mined_count_; }

 private:
  struct MemoKey {
    std::string root, head, cache_dir;
    std::optional<std::size_t> max_commits;
    double threshold;
    auto operator<=>(const MemoKey&) const = default;
  };

  std::ostream* log_;
  std::map<MemoKey, MineResult> memo_;
  std::size_t mined_count_ = 0;
};

struct ProjectOutcome {
  std::filesystem::path project;
  std::optional<ProjectRun> run;
  std::string error;  // set when run is absent
};

/// Analyzes each project independently; one failure does not stop the batch.
/// Throws Usage on an empty list.
std::vector<ProjectOutcome> analyze_projects(Session& session,
                                             const std::vector<std::filesystem::path>& projects,
                                             const ConfigOverrides& overrides = {});

/// Keeps only events on `methods` and renumbers them from 0.
std::vector<ChangeEvent> restrict_events(const std::vector<ChangeEvent>& events,
                                         const std::set<MethodIdentity>& methods);

struct ReviewResult {
  std::vector<Suggestion> accepted;
  bool cancelled = false;
};

/// Walks the suggestions file by file, printing each file's diff and reading
/// answers from `in`. End of input cancels the review.
ReviewResult review_suggestions(const std::filesystem::path& repo_root,
                                const std::vector<Suggestion>& suggestions,
                                const LevelScheme& scheme, std::istream& in, std::ostream& out);

/// Rewrites the files touched by `suggestions`; stale entries are skipped and reported in the plan.
RewritePlan apply_suggestions(const std::filesystem::path& repo_root,
                              const std::vector<Suggestion>& suggestions,
                              const LevelScheme& scheme);

}  // namespace loglift
