// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace loglift {

enum class Framework { Jul, Slf4j };

std::string_view to_string(Framework framework) noexcept;
/// Accepts "jul" or "slf4j" (case-insensitive); throws InvalidConfig otherwise.
Framework parse_framework(std::string_view text);

/// Ordered level names of a logging framework, least to most severe.
class LevelScheme {
 public:
  LevelScheme(Framework framework, std::vector<std::string> levels);

  static LevelScheme jul();
  static LevelScheme slf4j();
  static LevelScheme for_framework(Framework framework);

  Framework framework() const noexcept { return framework_; }
  const std::vector<std::string>& levels() const noexcept { return levels_; }
  std::size_t size() const noexcept { return levels_.size(); }

  bool contains(std::string_view level) const noexcept;
  /// 0-based index into levels(); throws OutOfRange for unknown names.
  std::size_t ordinal(std::string_view level) const;
  std::optional<std::size_t> find(std::string_view level) const noexcept;

  /// Default category set used by the WS heuristic.
  std::vector<std::string> default_categories() const;
  /// Levels considered critical by the KEYR heuristic.
  std::vector<std::string> critical_levels() const;

  /// Lowercase convenience method name for a level (`info`, `warning`, ...).
  std::string convenience_name(std::string_view level) const;
  /// Name of the method taking the level as its first argument, if any.
  std::optional<std::string> generic_log_method() const;

 private:
  Framework framework_;
  std::vector<std::string> levels_;
};

std::string to_lower(std::string_view text);
std::string to_upper(std::string_view text);

}  // namespace loglift
