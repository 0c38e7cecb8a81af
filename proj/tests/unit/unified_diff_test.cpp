// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "loglift/git.hpp"
#include "loglift/unified_diff.hpp"

namespace loglift {
namespace {

TEST(UnifiedDiff, OneChangedLine) {
  const std::string before = "a\nb\nc\nd\ne\nf\ng\nh\n";
  const std::string after = "a\nb\nc\nd\nE\nf\ng\nh\n";
  EXPECT_EQ(unified_diff("x/F.java", before, after),
            "--- a/x/F.java\n+++ b/x/F.java\n@@ -2,7 +2,7 @@\n b\n c\n d\n-e\n+E\n f\n g\n h\n");
}

TEST(UnifiedDiff, NoChangesIsEmpty) {
  EXPECT_EQ(unified_diff("F", "same\n", "same\n"), "");
  EXPECT_EQ(emit_patch({{"F", "x\n"}}, {{"F", "x\n"}}), "");
}

TEST(UnifiedDiff, TwoFilesInPathOrder) {
  auto patch = emit_patch({{"b.java", "1\n"}, {"a.java", "1\n"}, {"c.java", "1\n"}},
                          {{"b.java", "2\n"}, {"a.java", "2\n"}});
  auto a = patch.find("--- a/a.java");
  auto b = patch.find("--- a/b.java");
  ASSERT_NE(a, std::string::npos);
  ASSERT_NE(b, std::string::npos);
  EXPECT_LT(a, b);
  EXPECT_EQ(patch.find("c.java"), std::string::npos);
  EXPECT_NE(patch.find("@@ -1 +1 @@\n-1\n+2\n"), std::string::npos);
}

TEST(UnifiedDiff, MissingFinalNewline) {
  auto d = unified_diff("F", "a\nb", "a\nc");
  EXPECT_EQ(d, "--- a/F\n+++ b/F\n@@ -1,2 +1,2 @@\n a\n-b\n\\ No newline at end of file\n+c\n"
               "\\ No newline at end of file\n");
}

TEST(UnifiedDiff, SeparateHunksBeyondContext) {
  std::string before, after;
  for (int i = 0; i < 30; ++i) {
    before += std::to_string(i) + "\n";
    after += (i == 2 || i == 25 ? "x" : std::to_string(i)) + "\n";
  }
  auto d = unified_diff("F", before, after);
  EXPECT_NE(d.find("@@ -1,6 +1,6 @@"), std::string::npos) << d;
  EXPECT_NE(d.find("@@ -23,7 +23,7 @@"), std::string::npos) << d;
}

// Random edits must produce patches that git applies to reproduce the target.
TEST(UnifiedDiffProperty, GitApplyRoundTrip) {
  testing::TempDir dir;
  testing::GitRepo repo(dir.path());
  std::mt19937 rng(42);
  const std::vector<std::string> alphabet{"alpha", "beta", "gamma", "delta", "", "  x", "}"};
  for (int round = 0; round < 25; ++round) {
    std::vector<std::string> lines;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 40); i < n; ++i)
      lines.push_back(alphabet[rng() % alphabet.size()]);
    auto edited = lines;
    for (int k = 0, e = 1 + static_cast<int>(rng() % 6); k < e; ++k) {
      const auto pos = rng() % (edited.size() + 1);
      switch (rng() % 3) {
        case 0: edited.insert(edited.begin() + static_cast<long>(pos), "new" + std::to_string(k)); break;
        case 1: if (pos < edited.size()) edited.erase(edited.begin() + static_cast<long>(pos)); break;
        default: if (pos < edited.size()) edited[pos] += "!"; break;
      }
    }
    auto join = [&](const std::vector<std::string>& ls) {
      std::string s;
      for (const auto& l : ls) s += l + "\n";
      if (round % 5 == 0 && !s.empty()) s.pop_back();
      return s;
    };
    const std::string before = join(lines), after = join(edited);
    repo.write("f.txt", before);
    const auto patch = unified_diff("f.txt", before, after);
    if (before == after) {
      EXPECT_TRUE(patch.empty());
      continue;
    }
    testing::write_file(dir.path() / "p.diff", patch);
    auto r = git::run_process({"git", "apply", "p.diff"}, dir.path());
    ASSERT_EQ(r.exit_code, 0) << r.err << "\n" << patch;
    EXPECT_EQ(repo.read("f.txt"), after) << patch;
  }
}

}  // namespace
}  // namespace loglift
