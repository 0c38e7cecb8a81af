// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loglift/doi.hpp"
#include "loglift/leveler.hpp"
#include "loglift/levels.hpp"
#include "loglift/source_index.hpp"

namespace loglift::testing {

/// Directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

/// Scripted repository with deterministic authors and dates.
class GitRepo {
 public:
  explicit GitRepo(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }

  void write(const std::string& rel, const std::string& content) const;
  std::string read(const std::string& rel) const;
  void remove(const std::string& rel) const;
  /// Stages everything and commits; returns the new hash.
  std::string commit(const std::string& message);
  std::string git(const std::vector<std::string>& args) const;

 private:
  std::filesystem::path root_;
  long long clock_ = 1'600'000'000;
};

void write_file(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

// ---- hot/cold history ----

/// Service.java with hot(), cold() and filler(). The counters change between commits.
std::string hot_cold_source(int hot_counter, int filler_counter,
                            const std::string& hot_call = "LOGGER.finest(\"hot path taken\");",
                            const std::string& cold_call =
                                "LOGGER.log(Level.INFO, \"{0} main build action completed\");");

/// Commit 1 adds Service.java, commits 2-10 edit filler(), commits 11-20 edit hot().
void build_hot_cold_history(GitRepo& repo);

// ---- heuristic flip fixtures ----

struct FlipFixture {
  Heuristic heuristic;
  std::string file_path;
  std::string source;
  std::map<std::string, std::size_t> edits;  // signature -> number of edit events
  int target_line = 0;                        // line of the statement the heuristic denies
};

/// One fixture per heuristic. With every heuristic off each fixture emits a
/// control suggestion plus the target suggestion.
std::vector<FlipFixture> flip_fixtures();

SourceIndex index_fixture(const FlipFixture& fixture, const LevelScheme& scheme);
std::vector<ChangeEvent> fixture_events(const FlipFixture& fixture);

/// Decay off, so a method's DOI equals its edit count.
DoiConfig flip_doi();
HeuristicConfig all_heuristics_off();
inline constexpr std::size_t kFlipTdist = 3;
/// Everything off except `h` (TDIST uses kFlipTdist).
HeuristicConfig only(Heuristic h);

inline const std::vector<Heuristic>& all_heuristics() {
  static const std::vector<Heuristic> all{Heuristic::WS,   Heuristic::CTCH, Heuristic::IFS,
                                          Heuristic::KEYL, Heuristic::CNDS, Heuristic::KEYR,
                                          Heuristic::INH,  Heuristic::TDIST};
  return all;
}

// ---- extraction corpus ----

struct LabeledStatement {
  std::string file_path;
  int line = 0;
  ApiFlavor flavor = ApiFlavor::Unanalyzable;
  std::optional<std::string> level;
  std::string message_literals;
  bool in_catch = false;
  bool first_in_branch = false;
  bool level_guarded = false;
};

struct Corpus {
  Framework framework;
  std::map<std::string, std::string> files;  // path -> source
  std::vector<LabeledStatement> manifest;
  std::size_t variable_cases = 0;
};

/// Generated JUL and SLF4J corpora with the expected result for every statement.
std::vector<Corpus> extraction_corpora();

// ---- bug-focus history ----

/// Ten commits; fix commits touch Billing#charge and Billing#refund only.
/// The returned fraction is the hand-computed bug focus for the default
/// configuration with ws off and every other heuristic off.
void build_bug_history(GitRepo& repo);

}  // namespace loglift::testing
