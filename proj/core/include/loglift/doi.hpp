// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "loglift/method_identity.hpp"
#include "loglift/repo_miner.hpp"

namespace loglift {

struct DoiConfig {
  double edit_scaling = 1.0;  // s
  double decay_rate = 0.001;  // d

  /// Throws InvalidConfig unless s > 0 and 0 <= d < s.
  void validate() const;

  bool operator==(const DoiConfig&) const = default;
};

struct DoiValue {
  MethodIdentity method;
  double value = 0.0;

  bool operator==(const DoiValue&) const = default;
};

/// Per-method interaction counts built from an ordered event stream.
class DoiModel {
 public:
  struct Entry {
    std::size_t count = 0;        // n_m
    std::size_t first_event = 0;  // f_m

    bool operator==(const Entry&) const = default;
  };

  /// Appends one event. Its seq must equal total_events().
  void add(const ChangeEvent& event);

  std::size_t total_events() const noexcept { return total_; }
  const std::map<MethodIdentity, Entry>& entries() const noexcept { return entries_; }
  const Entry* find(const MethodIdentity& m) const;

  bool operator==(const DoiModel&) const = default;

 private:
  std::map<MethodIdentity, Entry> entries_;
  std::size_t total_ = 0;
};

/// Throws NonConsecutiveSequence unless seq runs 0..N-1 in order.
DoiModel process_events(const std::vector<ChangeEvent>& events, const DoiConfig& config = {});

/// s*n - d*(N-1-f) without clamping; 0 for unseen methods.
double raw_interest(const DoiModel& model, const MethodIdentity& m, const DoiConfig& config = {});

/// Clamped interest, never negative.
DoiValue doi_of(const DoiModel& model, const MethodIdentity& m, const DoiConfig& config = {});

}  // namespace loglift
