// SPDX-License-Identifier: Apache-2.0

#include "loglift/levels.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "loglift/error.hpp"

namespace loglift {

std::string to_lower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string to_upper(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::string_view to_string(Framework framework) noexcept {
  return framework == Framework::Jul ? "jul" : "slf4j";
}

Framework parse_framework(std::string_view text) {
  const auto lowered = to_lower(text);
  if (lowered == "jul") return Framework::Jul;
  if (lowered == "slf4j") return Framework::Slf4j;
  throw Error(ErrorKind::InvalidConfig, "unknown framework '" + std::string(text) + "'");
}

LevelScheme::LevelScheme(Framework framework, std::vector<std::string> levels)
    : framework_(framework), levels_(std::move(levels)) {
  std::set<std::string> seen;
  for (const auto& level : levels_) {
    if (!seen.insert(level).second) {
      throw Error(ErrorKind::InvalidConfig, "duplicate level '" + level + "'");
    }
  }
}

LevelScheme LevelScheme::jul() {
  return LevelScheme(Framework::Jul,
                     {"FINEST", "FINER", "FINE", "CONFIG", "INFO", "WARNING", "SEVERE"});
}

LevelScheme LevelScheme::slf4j() {
  return LevelScheme(Framework::Slf4j, {"TRACE", "DEBUG", "INFO", "WARN", "ERROR"});
}

LevelScheme LevelScheme::for_framework(Framework framework) {
  return framework == Framework::Jul ? jul() : slf4j();
}

bool LevelScheme::contains(std::string_view level) const noexcept {
  return find(level).has_value();
}

std::optional<std::size_t> LevelScheme::find(std::string_view level) const noexcept {
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i] == level) return i;
  }
  return std::nullopt;
}

std::size_t LevelScheme::ordinal(std::string_view level) const {
  if (auto idx = find(level)) return *idx;
  throw Error(ErrorKind::OutOfRange, "level '" + std::string(level) + "' is not part of the " +
                                         std::string(to_string(framework_)) + " scheme");
}

std::vector<std::string> LevelScheme::default_categories() const {
  if (framework_ == Framework::Jul) return {"CONFIG", "WARNING", "SEVERE"};
  return {"WARN", "ERROR"};
}

std::vector<std::string> LevelScheme::critical_levels() const {
  if (framework_ == Framework::Jul) return {"WARNING", "SEVERE"};
  return {"WARN", "ERROR"};
}

std::string LevelScheme::convenience_name(std::string_view level) const {
  return to_lower(level);
}

std::optional<std::string> LevelScheme::generic_log_method() const {
  if (framework_ == Framework::Jul) return std::string("log");
  return std::nullopt;
}

}  // namespace loglift
