// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "loglift/rename_map.hpp"

namespace loglift {
namespace {

MethodIdentity id(const std::string& name) { return {"F.java", "C#" + name + "()"}; }

TEST(RenameMap, Chain) {
  RenameMap m;
  m.add(1, id("a"), id("b"));
  m.add(2, id("b"), id("c"));
  EXPECT_EQ(m.resolve(id("a")), id("c"));
  EXPECT_EQ(m.resolve(id("b")), id("c"));
  EXPECT_EQ(m.resolve(id("z")), id("z"));
}

TEST(RenameMap, AnchoredInTime) {
  RenameMap m;
  m.add(1, id("a"), id("b"));
  m.add(3, id("b"), id("a"));  // renamed back
  EXPECT_EQ(m.resolve_from(id("a"), 0).identity, id("a"));
  EXPECT_EQ(m.resolve_from(id("a"), 2).identity, id("a"));
  EXPECT_EQ(m.resolve_from(id("b"), 2).identity, id("a"));
  EXPECT_EQ(m.resolve_from(id("b"), 4).identity, id("b"));
}

TEST(RenameMap, SelfAndDuplicateIgnored) {
  RenameMap m;
  m.add(0, id("a"), id("a"));
  m.add(0, id("a"), id("b"));
  m.add(0, id("a"), id("c"));
  EXPECT_EQ(m.size(), 1u);
  EXPECT_EQ(m.resolve(id("a")), id("b"));
}

// Simulates a rename script directly: each step renames one live name to a
// random (possibly reused) name. The oracle tracks where a name observed at
// step k ends up.
TEST(RenameMapProperty, RandomScriptsResolveLikeSimulation) {
  std::mt19937 rng(11);
  for (int round = 0; round < 300; ++round) {
    const int names = 2 + static_cast<int>(rng() % 6);
    const int steps = static_cast<int>(rng() % 20);
    std::vector<std::pair<int, int>> script;  // from, to per commit
    RenameMap m;
    for (int k = 0; k < steps; ++k) {
      int from = static_cast<int>(rng() % names), to = static_cast<int>(rng() % names);
      script.emplace_back(from, to);
      m.add(static_cast<std::size_t>(k), id(std::to_string(from)), id(std::to_string(to)));
    }
    for (int start = 0; start <= steps; ++start) {
      for (int n = 0; n < names; ++n) {
        int cur = n;
        for (int k = start; k < steps; ++k)
          if (script[k].first == cur && script[k].first != script[k].second) cur = script[k].second;
        const auto got = m.resolve_from(id(std::to_string(n)), static_cast<std::size_t>(start));
        EXPECT_EQ(got.identity, id(std::to_string(cur)));
        // Idempotent once resolved past the end of history.
        EXPECT_EQ(m.resolve_from(got.identity, static_cast<std::size_t>(steps)).identity,
                  got.identity);
        EXPECT_LE(got.next_commit, static_cast<std::size_t>(steps) + 1);
      }
    }
  }
}

}  // namespace
}  // namespace loglift
