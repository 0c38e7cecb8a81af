// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <string_view>

namespace loglift {

/// Unified diff of one file with `context` lines around each change; empty when equal.
std::string unified_diff(const std::string& path, std::string_view before, std::string_view after,
                         int context = 3);

/// Concatenated per-file diffs in path order. Paths missing from `patched` are unchanged.
std::string emit_patch(const std::map<std::string, std::string>& originals,
                       const std::map<std::string, std::string>& patched);

}  // namespace loglift
