// SPDX-License-Identifier: Apache-2.0

#include "loglift/doi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "loglift/error.hpp"

namespace loglift {

void DoiConfig::validate() const {
  if (!std::isfinite(edit_scaling) || edit_scaling <= 0)
    throw Error(ErrorKind::InvalidConfig, "doi.edit_scaling must be positive");
  if (!std::isfinite(decay_rate) || decay_rate < 0)
    throw Error(ErrorKind::InvalidConfig, "doi.decay_rate must be non-negative");
  if (decay_rate >= edit_scaling)
    throw Error(ErrorKind::InvalidConfig, "doi.decay_rate must be below doi.edit_scaling");
}

void DoiModel::add(const ChangeEvent& event) {
  if (event.seq != total_)
    throw Error(ErrorKind::NonConsecutiveSequence,
                "expected seq " + std::to_string(total_) + ", got " + std::to_string(event.seq));
  auto [it, inserted] = entries_.try_emplace(event.method, Entry{0, event.seq});
  ++it->second.count;
  ++total_;
}

const DoiModel::Entry* DoiModel::find(const MethodIdentity& m) const {
  auto it = entries_.find(m);
  return it == entries_.end() ? nullptr : &it->second;
}

DoiModel process_events(const std::vector<ChangeEvent>& events, const DoiConfig& config) {
  config.validate();
  DoiModel model;
  for (const auto& e : events) model.add(e);
  return model;
}

double raw_interest(const DoiModel& model, const MethodIdentity& m, const DoiConfig& config) {
  const auto* e = model.find(m);
  if (!e) return 0.0;
  double age = static_cast<double>(model.total_events() - 1 - e->first_event);
  return config.edit_scaling * static_cast<double>(e->count) - config.decay_rate * age;
}

DoiValue doi_of(const DoiModel& model, const MethodIdentity& m, const DoiConfig& config) {
  return DoiValue{m, std::max(0.0, raw_interest(model, m, config))};
}

}  // namespace loglift
