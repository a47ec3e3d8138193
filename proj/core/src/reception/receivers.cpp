#include "vesselsim/reception/receivers.hpp"

#include <algorithm>

#include "vesselsim/core/error.hpp"

namespace vesselsim::reception {

void sort_events(std::vector<AssimilationEvent>& events) {
  std::sort(events.begin(), events.end(), [](const AssimilationEvent& a, const AssimilationEvent& b) {
    return a.step != b.step ? a.step < b.step : a.carrier < b.carrier;
  });
}

bool decode(std::uint64_t assimilated, std::uint32_t threshold) {
  if (threshold == 0) fail(ErrorKind::InvalidParameter, "threshold must be at least 1");
  return assimilated >= threshold;
}

double activation_time(StepIndex event_step, StepIndex emit_step, double dt) {
  if (event_step < emit_step) fail(ErrorKind::InvariantBreach, "activation before the burst");
  return static_cast<double>(event_step - emit_step) * dt;
}

ReceiverBank::ReceiverBank(std::vector<std::uint32_t> thresholds, StepIndex emit_step, double dt)
    : thresholds_(std::move(thresholds)), emit_step_(emit_step), dt_(dt), activated_(thresholds_.size(), 0) {
  for (auto s : thresholds_) {
    if (s == 0) fail(ErrorKind::InvalidParameter, "threshold must be at least 1");
  }
}

std::pair<double, double> cell_coordinates(const vessel::Scenario& scenario, std::uint32_t cell) {
  const auto& c = scenario.endothelium().cells.at(cell);
  return {c.phi, c.z - scenario.transmitter_z()};
}

void ReceiverBank::fold(std::span<const AssimilationEvent> events, const vessel::Scenario& scenario) {
  for (std::size_t i = 1; i < events.size(); ++i) {
    const auto& a = events[i - 1];
    const auto& b = events[i];
    if (b.step < a.step || (b.step == a.step && b.carrier <= a.carrier)) {
      fail(ErrorKind::InvariantBreach, "assimilation events out of order");
    }
  }
  for (const auto& e : events) {
    auto it = states_.find(e.cell);
    if (it == states_.end()) {
      ReceiverState st;
      st.cell = e.cell;
      std::tie(st.phi, st.z) = cell_coordinates(scenario, e.cell);
      st.activated_at.assign(thresholds_.size(), std::nullopt);
      it = states_.emplace(e.cell, std::move(st)).first;
    }
    auto& st = it->second;
    ++st.assimilated;
    ++total_;
    for (std::size_t k = 0; k < thresholds_.size(); ++k) {
      if (!st.activated_at[k] && decode(st.assimilated, thresholds_[k])) {
        st.activated_at[k] = e.step;
        ++activated_[k];
      }
    }
  }
}

std::vector<ActivationRecord> ReceiverBank::footprint() const {
  std::vector<ActivationRecord> out;
  for (std::size_t k = 0; k < thresholds_.size(); ++k) {
    const auto first = out.size();
    for (const auto& [cell, st] : states_) {
      if (!st.activated_at[k]) continue;
      out.push_back({thresholds_[k], cell, st.phi, st.z, activation_time(*st.activated_at[k], emit_step_, dt_),
                     st.assimilated});
    }
    std::stable_sort(out.begin() + static_cast<std::ptrdiff_t>(first), out.end(),
                     [](const ActivationRecord& a, const ActivationRecord& b) {
                       return a.t_activation != b.t_activation ? a.t_activation < b.t_activation : a.cell < b.cell;
                     });
  }
  return out;
}

void ReceiverBank::restore(std::map<std::uint32_t, ReceiverState> states, std::uint64_t total) {
  states_ = std::move(states);
  total_ = total;
  std::fill(activated_.begin(), activated_.end(), 0);
  for (const auto& [cell, st] : states_) {
    if (st.activated_at.size() != thresholds_.size()) fail(ErrorKind::InvalidParameter, "receiver state mismatch");
    for (std::size_t k = 0; k < thresholds_.size(); ++k) activated_[k] += st.activated_at[k] ? 1 : 0;
  }
}

}  // namespace vesselsim::reception
