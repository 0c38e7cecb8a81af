// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "loglift/error.hpp"
#include "loglift/java_structure.hpp"

namespace loglift::java {
namespace {

const char* kSource = R"(package p;

import java.util.*;

@SuppressWarnings("x")
public class Outer<T extends Comparable<T>> extends Base implements Runnable, Cloneable {
  private final Map<String, List<T>> cache = new HashMap<>();

  public Outer(int size) { super(size); }

  @Override
  public void run() {
    String s = "}{";
    char c = '}';
    /* } */ // }
  }

  static <K> List<K> copy(final List<? extends K> in, int[] sizes, String... rest) throws Exception {
    return null;
  }

  interface Callback { void done(long t); }

  enum Mode {
    A, B;
    int weight() { return 1; }
  }

  class Inner extends Outer<T> {
    Inner() { super(1); }
    void run(Map<String, Integer> m) {}
  }

  record Point(int x, int y) {
    Point { if (x < 0) throw new IllegalArgumentException(); }
    int sum() { return x + y; }
  }
}
)";

std::vector<std::string> signatures(const JavaFile& f) {
  std::vector<std::string> out;
  for (const auto& m : f.methods()) out.push_back(m.signature);
  return out;
}

TEST(JavaStructure, MethodsAndTypes) {
  auto f = JavaFile::parse(kSource);
  EXPECT_EQ(signatures(f),
            (std::vector<std::string>{"Outer#Outer(int)", "Outer#run()",
                                      "Outer#copy(List,int[],String...)", "Outer.Mode#weight()",
                                      "Outer.Inner#Inner()", "Outer.Inner#run(Map)",
                                      "Outer.Point#Point()", "Outer.Point#sum()"}));
  ASSERT_GE(f.types().size(), 1u);
  EXPECT_EQ(f.types()[0].name, "Outer");
  EXPECT_EQ(f.types()[0].supertypes, (std::vector<std::string>{"Base", "Runnable", "Cloneable"}));
  for (const auto& t : f.types())
    if (t.name == "Outer.Inner") EXPECT_EQ(t.supertypes, std::vector<std::string>{"Outer"});
  const auto& run = f.methods()[1];
  EXPECT_EQ(run.start_line, 12);  // annotation line excluded
  EXPECT_EQ(run.end_line, 16);
}

TEST(JavaStructure, Errors) {
  EXPECT_THROW(JavaFile::parse("class A { void f() { }"), Error);
  EXPECT_THROW(JavaFile::parse("class A { String s = \"unterminated; }"), Error);
}

TEST(JavaStructure, StatementsAndBranches) {
  auto f = JavaFile::parse(
      "class A { void f() { if (a) { x(); y(); } else z(); try { t(); } catch (E e) { c(); } } }");
  int first = 0, in_catch = 0;
  for (const auto& s : f.statements()) {
    first += s.first_in_branch;
    in_catch += s.in_catch;
  }
  EXPECT_EQ(first, 2);
  EXPECT_EQ(in_catch, 1);
}

TEST(Dice, Coefficient) {
  EXPECT_DOUBLE_EQ(dice_similarity({"a", "b", "b"}, {"b", "b", "c"}), 2.0 * 2 / 6);
  EXPECT_DOUBLE_EQ(dice_similarity({}, {}), 1.0);
  EXPECT_DOUBLE_EQ(dice_similarity({"a"}, {}), 0.0);
  auto a = JavaFile::parse("class A { int f() { return 1 + 2; } }");
  auto b = JavaFile::parse("class B { int g() { return 1 + 2; } }");
  EXPECT_DOUBLE_EQ(body_similarity(a, a.methods()[0], b, b.methods()[0]), 1.0);
  EXPECT_EQ(body_tokens(a, a.methods()[0]), (std::vector<std::string>{"return", "1", "+", "2", ";"}));
}

}  // namespace
}  // namespace loglift::java
