// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace loglift::git {

struct ProcessResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

/// Runs argv[0] (PATH lookup) with the given working directory, extra
/// environment entries and stdin contents; captures stdout and stderr.
ProcessResult run_process(const std::vector<std::string>& argv,
                          const std::filesystem::path& cwd = {},
                          const std::vector<std::pair<std::string, std::string>>& env = {},
                          std::string_view input = {});

/// A repository discovered from any path inside its working tree.
class Repository {
 public:
  /// Throws NotARepository when `path` has no git metadata.
  static Repository open(const std::filesystem::path& path);

  const std::filesystem::path& root() const noexcept { return root_; }
  const std::filesystem::path& common_dir() const noexcept { return common_dir_; }

  /// Full hash of HEAD. Throws EmptyRepository when HEAD is unborn.
  std::string head() const;

  /// Runs `git <args>` in the repository root; throws GitFailure on non-zero exit.
  std::string run(const std::vector<std::string>& args) const;

 private:
  std::filesystem::path root_;
  std::filesystem::path common_dir_;
};

/// Persistent `git cat-file --batch` process for reading blobs by `<rev>:<path>`.
class BlobReader {
 public:
  explicit BlobReader(const Repository& repo);
  ~BlobReader();
  BlobReader(const BlobReader&) = delete;
  BlobReader& operator=(const BlobReader&) = delete;

  /// Contents of the object, or nullopt when it does not exist.
  std::optional<std::string> read(const std::string& spec);

 private:
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
  std::string buffer_;

  bool fill();
  std::string read_line();
  std::string read_exact(std::size_t n);
};

struct Hunk {
  int old_start = 0;
  int old_count = 0;
  int new_start = 0;
  int new_count = 0;
};

enum class FileStatus { Added, Deleted, Modified, Renamed };

struct FileDiff {
  FileStatus status = FileStatus::Modified;
  std::string old_path;
  std::string new_path;
  std::vector<Hunk> hunks;
};

/// Parses `git diff -U0` style output (headers and hunk ranges only).
std::vector<FileDiff> parse_unified_diff(std::string_view text);

}  // namespace loglift::git
