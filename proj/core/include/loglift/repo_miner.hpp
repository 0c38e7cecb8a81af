// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "loglift/method_identity.hpp"
#include "loglift/rename_map.hpp"

namespace loglift {

struct CommitRecord {
  std::string id;
  std::int64_t timestamp = 0;
  std::size_t parent_count = 0;
  std::string message;

  bool operator==(const CommitRecord&) const = default;
};

enum class EventKind { Edit };

/// One method touched by a commit. Additions have no old side, deletions no new side.
struct MethodChange {
  std::optional<MethodIdentity> old_method;
  std::optional<MethodIdentity> new_method;
  bool changed = true;

  auto operator<=>(const MethodChange&) const = default;
  bool operator==(const MethodChange&) const = default;
};

struct ChangeEvent {
  std::string commit;
  std::size_t seq = 0;
  MethodIdentity method;
  EventKind kind = EventKind::Edit;

  bool operator==(const ChangeEvent&) const = default;
};

struct MineOptions {
  std::optional<std::size_t> max_commits;  // nullopt = unlimited
  double rename_threshold = 0.75;
  std::optional<std::filesystem::path> cache_dir;  // default: <git common dir>/loglift
  bool use_cache = true;
};

struct MineDiagnostics {
  std::size_t commits_analyzed = 0;
  std::size_t merge_commits_skipped = 0;
  std::size_t unparsable_files = 0;
  std::size_t raw_changes = 0;
  std::size_t events_dropped = 0;  // resolved method absent from the current tree
  std::size_t renames = 0;
  bool cache_hit = false;
};

/// Persisted output of the history pass for one repository head.
struct ChangeCache {
  static constexpr int kFormatVersion = 1;

  int format_version = kFormatVersion;
  std::string repo_root;
  std::string head;
  std::optional<std::size_t> max_commits;
  double rename_threshold = 0.75;
  std::vector<CommitRecord> commits;
  std::vector<std::vector<MethodChange>> changes;  // parallel to commits
  RenameMap renames;
  std::size_t merge_commits_skipped = 0;
  std::size_t unparsable_files = 0;

  bool operator==(const ChangeCache&) const = default;
};

struct MineResult {
  std::string repo_root;
  std::string head;
  std::vector<CommitRecord> commits;
  std::vector<std::vector<MethodChange>> changes;
  std::vector<ChangeEvent> events;
  RenameMap renames;
  MineDiagnostics diagnostics;
};

/// Non-merge commits on the first-parent chain from HEAD, oldest first,
/// limited to the most recent `max_commits`.
std::vector<CommitRecord> enumerate_commits(const std::filesystem::path& repo_path,
                                            std::optional<std::size_t> max_commits,
                                            std::size_t* merges_skipped = nullptr);

/// Methods touched by the commit's diff against its parent, deduplicated and sorted.
std::vector<MethodChange> extract_method_changes(const CommitRecord& commit,
                                                 const std::filesystem::path& repo_path);

/// Rename relationships detected across `commits` (oldest first).
RenameMap build_rename_map(const std::vector<CommitRecord>& commits,
                           const std::filesystem::path& repo_path, double threshold = 0.75);

/// Second pass: resolves cached changes through `renames`, drops methods missing
/// from `current_methods` and numbers the surviving events.
std::vector<ChangeEvent> replay_changes(const std::vector<CommitRecord>& commits,
                                        const std::vector<std::vector<MethodChange>>& changes,
                                        const RenameMap& renames,
                                        const std::set<MethodIdentity>& current_methods,
                                        std::size_t* dropped = nullptr);

/// Method identities declared in the working tree below `repo_root`.
std::set<MethodIdentity> current_method_identities(const std::filesystem::path& repo_root);

/// Two-pass history mining with an on-disk cache keyed by repository head.
MineResult mine(const std::filesystem::path& repo_path, const MineOptions& options = {});
MineResult mine(const std::filesystem::path& repo_path, const MineOptions& options,
                const std::set<MethodIdentity>& current_methods);

std::filesystem::path default_cache_dir(const std::filesystem::path& repo_path);
std::filesystem::path cache_file_path(const std::filesystem::path& cache_dir,
                                      std::optional<std::size_t> max_commits);

void write_change_cache(const std::filesystem::path& file, const ChangeCache& cache);
/// nullopt when the file is missing or malformed.
std::optional<ChangeCache> read_change_cache(const std::filesystem::path& file);

}  // namespace loglift
