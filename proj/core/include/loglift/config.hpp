// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "loglift/doi.hpp"
#include "loglift/leveler.hpp"
#include "loglift/levels.hpp"
#include "loglift/reporter.hpp"

namespace loglift {

inline constexpr std::string_view kConfigFileName = ".loglift.conf";

struct Config {
  Framework framework = Framework::Jul;
  DoiConfig doi;
  HeuristicConfig heuristics;
  std::optional<std::size_t> max_commits;  // nullopt: unlimited
  std::string bug_pattern{kDefaultBugPattern};
  BugFocusScope bug_focus_scope = BugFocusScope::Suggestions;
  std::optional<std::filesystem::path> cache_dir;
  double rename_threshold = 0.75;

  /// Sets one `key = value` entry. Throws InvalidConfig for unknown keys or bad values.
  void set(std::string_view key, std::string_view value);

  /// Every key with its current value, one `key = value` per line.
  std::string serialize() const;

  /// Throws InvalidConfig when fields are inconsistent.
  void validate() const;

  LevelScheme scheme() const { return LevelScheme::for_framework(framework); }

  bool operator==(const Config&) const = default;
};

/// Applies the lines of a config file on top of `base`. `#` starts a comment.
Config parse_config(std::string_view text, Config base = {});

/// `.loglift.conf` in `project_dir`, else in `repo_root`.
std::optional<std::filesystem::path> find_config_file(const std::filesystem::path& project_dir,
                                                      const std::filesystem::path& repo_root);

}  // namespace loglift
