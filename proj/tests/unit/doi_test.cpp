// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include "loglift/doi.hpp"
#include "loglift/error.hpp"

namespace loglift {
namespace {

MethodIdentity m(int i) { return {"F.java", "C#m" + std::to_string(i) + "()"}; }

std::vector<ChangeEvent> stream(const std::vector<int>& methods) {
  std::vector<ChangeEvent> out;
  for (std::size_t i = 0; i < methods.size(); ++i)
    out.push_back({"c" + std::to_string(i), i, m(methods[i]), EventKind::Edit});
  return out;
}

// Recomputes n, f and N from scratch for every query.
double brute_force(const std::vector<int>& methods, int target, double s, double d) {
  const double n_total = static_cast<double>(methods.size());
  double n = 0;
  std::optional<double> first;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    if (methods[i] != target) continue;
    n += 1;
    if (!first) first = static_cast<double>(i);
  }
  if (!first) return 0.0;
  return std::max(0.0, s * n - d * (n_total - 1 - *first));
}

TEST(DoiEngine, EmptyStream) {
  auto model = process_events({});
  EXPECT_EQ(model.total_events(), 0u);
  EXPECT_TRUE(model.entries().empty());
  EXPECT_EQ(doi_of(model, m(1)).value, 0.0);
}

TEST(DoiEngine, CountsFirstSeenAndTotal) {
  auto model = process_events(stream({1, 1, 2}));
  EXPECT_EQ(model.total_events(), 3u);
  ASSERT_NE(model.find(m(1)), nullptr);
  EXPECT_EQ(model.find(m(1))->count, 2u);
  EXPECT_EQ(model.find(m(1))->first_event, 0u);
  EXPECT_EQ(model.find(m(2))->count, 1u);
  EXPECT_EQ(model.find(m(2))->first_event, 2u);
}

TEST(DoiEngine, FormulaExamples) {
  const DoiConfig cfg{1.0, 0.017};
  EXPECT_DOUBLE_EQ(doi_of(process_events(stream({1})), m(1), cfg).value, 1.0);
  auto two = process_events(stream({1, 2}));
  EXPECT_DOUBLE_EQ(doi_of(two, m(1), cfg).value, 1.0 - 0.017);
  EXPECT_DOUBLE_EQ(doi_of(two, m(2), cfg).value, 1.0);
  std::vector<int> long_tail{1};
  for (int i = 0; i < 100; ++i) long_tail.push_back(2 + i % 5);
  auto model = process_events(stream(long_tail));
  EXPECT_LT(raw_interest(model, m(1), cfg), 0.0);
  EXPECT_EQ(doi_of(model, m(1), cfg).value, 0.0);
}

TEST(DoiEngine, RejectsGapsInSequence) {
  auto events = stream({1, 2, 3});
  events[2].seq = 5;
  try {
    process_events(events);
    FAIL() << "expected NonConsecutiveSequence";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NonConsecutiveSequence);
  }
  events = stream({1, 2});
  events[0].seq = 1;
  EXPECT_THROW(process_events(events), Error);
}

TEST(DoiEngine, ConfigValidation) {
  EXPECT_NO_THROW((DoiConfig{1.0, 0.0}.validate()));
  EXPECT_THROW((DoiConfig{0.0, 0.0}.validate()), Error);
  EXPECT_THROW((DoiConfig{1.0, -0.1}.validate()), Error);
  EXPECT_THROW((DoiConfig{1.0, 1.0}.validate()), Error);
}

TEST(DoiEngineProperty, MatchesBruteForceOnRandomStreams) {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 100; ++round) {
    const int methods = 1 + static_cast<int>(rng() % 50);
    const std::size_t len = rng() % 1001;
    std::vector<int> ids;
    for (std::size_t i = 0; i < len; ++i) ids.push_back(static_cast<int>(rng() % methods));
    const double s = std::uniform_real_distribution<double>(1e-6, 2.0)(rng);
    const double d = std::uniform_real_distribution<double>(0.0, s)(rng) * 0.999;
    auto model = process_events(stream(ids), {s, d});
    for (int id = 0; id < methods; ++id) {
      EXPECT_NEAR(doi_of(model, m(id), {s, d}).value, brute_force(ids, id, s, d), 1e-9);
    }
  }
}

TEST(DoiEngineProperty, AppendDeltasAreExactForDyadicRates) {
  // Dyadic s and d keep every intermediate value exactly representable.
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    const double s = static_cast<double>(1 + rng() % 128) / 64.0;
    const double d = std::floor(s * 1024.0 * static_cast<double>(rng() % 1000) / 1000.0) / 1024.0;
    const DoiConfig cfg{s, d};
    std::vector<int> ids;
    const auto len = 1 + rng() % 200;
    for (std::size_t i = 0; i < len; ++i) ids.push_back(static_cast<int>(rng() % 10));
    const int target = ids[rng() % ids.size()];
    auto before = process_events(stream(ids));
    const double raw = raw_interest(before, m(target), cfg);

    auto on = ids;
    on.push_back(target);
    EXPECT_EQ(raw_interest(process_events(stream(on)), m(target), cfg) - raw, s - d);

    auto off = ids;
    off.push_back(target + 100);
    EXPECT_EQ(raw_interest(process_events(stream(off)), m(target), cfg) - raw, -d);
  }
}

TEST(DoiEngineProperty, NeverNegative) {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 50; ++round) {
    std::vector<int> ids;
    for (int i = 0; i < 300; ++i) ids.push_back(static_cast<int>(rng() % 40));
    auto model = process_events(stream(ids));
    const DoiConfig harsh{1.0, 0.9};
    for (int id = 0; id < 45; ++id) EXPECT_GE(doi_of(model, m(id), harsh).value, 0.0);
  }
}

TEST(DoiEngineProperty, RecencyAndFrequency) {
  const DoiConfig cfg{1.0, 0.01};
  // Same count, later first event -> at least as interesting.
  auto model = process_events(stream({1, 9, 9, 2, 9, 9}));
  EXPECT_GE(doi_of(model, m(2), cfg).value, doi_of(model, m(1), cfg).value);
  // Same first event and N, more edits -> strictly more interesting.
  auto a = process_events(stream({1, 9, 9, 9}));
  auto b = process_events(stream({1, 1, 9, 9}));
  EXPECT_GT(doi_of(b, m(1), cfg).value, doi_of(a, m(1), cfg).value);
}

}  // namespace
}  // namespace loglift
