// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "loglift/leveler.hpp"
#include "loglift/levels.hpp"

namespace loglift {

/// Source text that replaces the statement's level or method-name token.
std::string replacement_text(const LoggingStatement& stmt, const std::string& proposed,
                             const LevelScheme& scheme);

struct StaleSuggestion {
  Suggestion suggestion;
  std::string found;  // text currently at the recorded span
};

struct FileRewrite {
  std::string file_path;
  std::string original;
  std::string patched;
  std::vector<Suggestion> applied;
  std::vector<StaleSuggestion> stale;

  bool changed() const { return original != patched; }
};

/// Applies suggestions whose recorded span still holds the recorded token;
/// the rest are reported as stale. Every other byte is preserved.
FileRewrite rewrite_file(const std::string& file_path, const std::string& source,
                         const std::vector<Suggestion>& suggestions, const LevelScheme& scheme);

/// Strict variant: throws StaleSpan if any suggestion no longer matches.
std::string rewrite_source(const std::string& source, const std::vector<Suggestion>& suggestions,
                           const LevelScheme& scheme);

struct RewritePlan {
  std::vector<FileRewrite> files;  // path order

  std::size_t stale_count() const;
  std::size_t applied_count() const;
  /// Unified diff covering every changed file.
  std::string patch() const;
};

/// Groups suggestions per file (paths relative to `root`) and rewrites them in memory.
RewritePlan plan_rewrites(const std::filesystem::path& root,
                          const std::vector<Suggestion>& suggestions, const LevelScheme& scheme);

/// Writes every changed file in `plan` below `root`, each via temp file and rename.
void apply_plan(const std::filesystem::path& root, const RewritePlan& plan);

void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace loglift
