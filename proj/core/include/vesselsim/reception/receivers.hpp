#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/vessel/scenario.hpp"

namespace vesselsim::reception {

/// A carrier destroyed by an endothelial receptor during `step`.
struct AssimilationEvent {
  StepIndex step = 0;
  ObjectId carrier = 0;
  std::uint32_t cell = 0;
  std::uint32_t receptor = 0;
  friend auto operator<=>(const AssimilationEvent&, const AssimilationEvent&) = default;
};

/// Fold order: (step, carrier id).
void sort_events(std::vector<AssimilationEvent>& events);

struct ReceiverState {
  std::uint32_t cell = 0;
  std::uint64_t assimilated = 0;
  double phi = 0.0;  ///< cell center angle, radians in (-pi, pi]
  double z = 0.0;    ///< cell center axial position relative to the transmitter plane, m
  /// Step of the event that first brought `assimilated` to each threshold, indexed like the threshold list.
  std::vector<std::optional<StepIndex>> activated_at;
};

struct ActivationRecord {
  std::uint32_t threshold = 0;
  std::uint32_t cell = 0;
  double phi = 0.0;
  double z = 0.0;
  double t_activation = 0.0;  ///< seconds after the burst
  std::uint64_t assimilated = 0;
};

/// True when `assimilated` reaches the threshold S (S >= 1).
bool decode(std::uint64_t assimilated, std::uint32_t threshold);

/// (event_step - emit_step) dt.
double activation_time(StepIndex event_step, StepIndex emit_step, double dt);

/// Per-cell accumulation and threshold decoding for every threshold of the run.
class ReceiverBank {
 public:
  ReceiverBank(std::vector<std::uint32_t> thresholds, StepIndex emit_step, double dt);

  /// Applies events in (step, carrier id) order. Cells are located through `scenario`.
  void fold(std::span<const AssimilationEvent> events, const vessel::Scenario& scenario);

  const std::vector<std::uint32_t>& thresholds() const noexcept { return thresholds_; }
  /// Cells activated so far, per threshold.
  const std::vector<std::uint64_t>& activated() const noexcept { return activated_; }
  std::uint64_t total_assimilated() const noexcept { return total_; }
  const std::map<std::uint32_t, ReceiverState>& states() const noexcept { return states_; }

  /// One record per (threshold, activated cell), ordered by threshold, activation time, cell.
  std::vector<ActivationRecord> footprint() const;

  /// Restores saved state (checkpoint resume).
  void restore(std::map<std::uint32_t, ReceiverState> states, std::uint64_t total);

 private:
  std::vector<std::uint32_t> thresholds_;
  StepIndex emit_step_;
  double dt_;
  std::map<std::uint32_t, ReceiverState> states_;
  std::vector<std::uint64_t> activated_;
  std::uint64_t total_ = 0;
};

/// Cell center coordinates used for footprints: (phi, z relative to the transmitter plane).
std::pair<double, double> cell_coordinates(const vessel::Scenario& scenario, std::uint32_t cell);

}  // namespace vesselsim::reception
