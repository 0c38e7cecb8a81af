// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "loglift/method_identity.hpp"

namespace loglift {

struct RenameRecord {
  std::size_t commit_index = 0;  // position in the oldest-first commit list
  MethodIdentity from;
  MethodIdentity to;

  bool operator==(const RenameRecord&) const = default;
};

/// Historical method identities mapped to their successors.
///
/// Lookups are anchored in time: a rename recorded at commit k only applies
/// to identities observed at or before k. Following a chain therefore moves
/// strictly forward through history, which keeps resolution finite even when
/// a name is reused or a method is renamed back to an earlier name.
class RenameMap {
 public:
  struct Resolution {
    MethodIdentity identity;
    std::size_t next_commit = 0;  // first commit index not yet considered
  };

  /// Records `from -> to` at `commit_index`. No-op when from == to.
  void add(std::size_t commit_index, MethodIdentity from, MethodIdentity to);

  /// Follows renames recorded at commits >= `since`, oldest first.
  Resolution resolve_from(const MethodIdentity& id, std::size_t since) const;

  /// Identity in the newest analyzed version of a name seen at the start of history.
  MethodIdentity resolve(const MethodIdentity& id) const { return resolve_from(id, 0).identity; }

  const std::vector<RenameRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  bool operator==(const RenameMap& other) const { return records_ == other.records_; }

 private:
  std::vector<RenameRecord> records_;
  // from -> (commit_index, index into records_), ordered by commit
  std::map<MethodIdentity, std::map<std::size_t, std::size_t>> by_source_;
};

}  // namespace loglift
