// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <functional>
#include <string>

namespace loglift {

/// Stable key for a method across history: repository-relative path plus
/// `Type#name(ParamTypes)`.
struct MethodIdentity {
  std::string file_path;
  std::string signature;

  auto operator<=>(const MethodIdentity&) const = default;
  bool operator==(const MethodIdentity&) const = default;

  /// `path::signature`, used in reports and diagnostics.
  std::string to_string() const { return file_path + "::" + signature; }
};

}  // namespace loglift

template <>
struct std::hash<loglift::MethodIdentity> {
  std::size_t operator()(const loglift::MethodIdentity& id) const noexcept {
    const std::size_t a = std::hash<std::string>{}(id.file_path);
    const std::size_t b = std::hash<std::string>{}(id.signature);
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};
