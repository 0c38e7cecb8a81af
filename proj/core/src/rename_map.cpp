// SPDX-License-Identifier: Apache-2.0

#include "loglift/rename_map.hpp"

namespace loglift {

void RenameMap::add(std::size_t commit_index, MethodIdentity from, MethodIdentity to) {
  if (from == to) return;
  auto& slots = by_source_[from];
  // One rename per source identity per commit; the first pairing wins.
  if (slots.count(commit_index)) return;
  slots.emplace(commit_index, records_.size());
  records_.push_back(RenameRecord{commit_index, std::move(from), std::move(to)});
}

RenameMap::Resolution RenameMap::resolve_from(const MethodIdentity& id, std::size_t since) const {
  Resolution res{id, since};
  for (;;) {
    auto it = by_source_.find(res.identity);
    if (it == by_source_.end()) break;
    auto slot = it->second.lower_bound(res.next_commit);
    if (slot == it->second.end()) break;
    const auto& record = records_[slot->second];
    res.identity = record.to;
    res.next_commit = record.commit_index + 1;
  }
  return res;
}

}  // namespace loglift
