#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/gridsim/topology.hpp"
#include "vesselsim/reception/receivers.hpp"
#include "vesselsim/vessel/scenario.hpp"

namespace vesselsim {
class ThreadPool;
}

namespace vesselsim::engine {

/// Object in transit between partitions.
struct ObjectEnvelope {
  NanoObject object;
  grid::PartitionId origin = 0;  ///< partition that owned it at the start of the transfer
  grid::PartitionId holder = 0;  ///< partition sending it in this round
  grid::Face via = grid::Face::PosX;  ///< face of `holder` it leaves through
  std::uint32_t hops = 0;
};

/// Read-only copies for one neighbor.
struct GhostBatch {
  grid::PartitionId to = 0;
  std::vector<NanoObject> objects;
};

/// Per-partition results of one step.
struct PartitionReport {
  grid::PartitionId id = 0;
  std::array<std::uint64_t, kKindCount> live{};
  std::array<std::uint64_t, kKindCount> exited{};
  std::uint64_t absorbed = 0;  ///< carriers taken up by cell receptors
  std::uint64_t wall_contacts = 0;
  std::uint64_t pair_contacts = 0;
  std::uint64_t clamped = 0;
  std::vector<reception::AssimilationEvent> events;
};

using ZRange = std::pair<double, double>;

/// Objects and per-step work of one partition of the vessel. Every phase is a
/// pure function of the partition's objects, the ghosts it received and the
/// step index, which is what makes split runs match single-partition runs.
class PartitionWorld {
 public:
  PartitionWorld(std::shared_ptr<const vessel::Scenario> scenario, grid::Topology topology, grid::PartitionId id,
                 ThreadPool* pool = nullptr);

  grid::PartitionId id() const noexcept { return id_; }
  const grid::Partition& partition() const { return topology_.at(id_); }
  std::size_t size() const noexcept { return objects_.size(); }
  const std::vector<NanoObject>& objects() const noexcept { return objects_; }

  /// Owned objects, sorted by id, optionally limited to centers with z in [lo, hi].
  std::vector<NanoObject> snapshot(std::optional<ZRange> z_range = std::nullopt) const;
  /// Adds objects; each must belong to this partition.
  void insert(std::span<const NanoObject> objects);
  /// Removes the listed ids that live here; others are ignored. Returns the number removed.
  std::size_t remove(std::span<const ObjectId> ids);

  /// Motion, top/bottom exits and side-wall resolution with receptor tests.
  /// Returns envelopes for objects that left the partition.
  std::vector<ObjectEnvelope> local_phase(StepIndex step);
  /// Accepts incoming envelopes; returns the ones that must travel further.
  std::vector<ObjectEnvelope> deliver(std::span<const ObjectEnvelope> envelopes);

  /// Copies of owned objects and of ghosts received on earlier axes that lie
  /// within the ghost width of this partition's faces along `axis`.
  std::vector<GhostBatch> ghosts(int axis) const;
  void accept_ghosts(std::span<const NanoObject> ghosts);
  std::size_t ghost_count() const noexcept { return ghosts_.size(); }

  /// Pair contacts among owned objects and ghosts, applied to owned objects
  /// only, then containment and exits. Clears the ghosts.
  std::vector<ObjectEnvelope> pair_phase(StepIndex step);

  /// Counters since the last report. Resets them.
  PartitionReport report();

  double ghost_width() const noexcept { return ghost_width_; }

 private:
  std::vector<ObjectEnvelope> outbound();
  void sort_objects();
  double diffusion_of(const NanoObject& o) const;

  std::shared_ptr<const vessel::Scenario> scenario_;
  grid::Topology topology_;
  grid::PartitionId id_;
  ThreadPool* pool_;
  double ghost_width_;
  std::vector<NanoObject> objects_;
  std::vector<NanoObject> ghosts_;
  PartitionReport pending_;
};

}  // namespace vesselsim::engine
