#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "vesselsim/engine/partition_world.hpp"

namespace vesselsim::engine {

/// The coordinator's view of all partitions. Every call is one phase applied to
/// all partitions; per-partition arguments and results are indexed by partition id.
class PartitionSet {
 public:
  virtual ~PartitionSet() = default;

  virtual const grid::Topology& topology() const noexcept = 0;
  /// Owned objects of every partition merged and sorted by id.
  virtual std::vector<NanoObject> snapshot(std::optional<ZRange> z_range) = 0;
  virtual void insert(std::vector<std::vector<NanoObject>> per_partition) = 0;
  /// Returns the number of objects removed.
  virtual std::uint64_t remove(const std::vector<ObjectId>& ids) = 0;
  virtual std::vector<std::vector<ObjectEnvelope>> local(StepIndex step) = 0;
  virtual std::vector<std::vector<ObjectEnvelope>> deliver(std::vector<std::vector<ObjectEnvelope>> inbound) = 0;
  virtual std::vector<std::vector<GhostBatch>> ghosts(int axis) = 0;
  virtual void accept_ghosts(std::vector<std::vector<NanoObject>> inbound) = 0;
  virtual std::vector<std::vector<ObjectEnvelope>> pairs(StepIndex step) = 0;
  virtual std::vector<PartitionReport> report() = 0;
};

/// Split of the vessel's bounding box [-R, R]^2 x [-L/2, L/2].
grid::Topology vessel_topology(const vessel::Scenario& scenario, std::uint32_t nx, std::uint32_t ny,
                               std::uint32_t nz);

/// All partitions in this process, called directly.
class LocalPartitionSet final : public PartitionSet {
 public:
  LocalPartitionSet(std::shared_ptr<const vessel::Scenario> scenario, grid::Topology topology, std::size_t workers);
  ~LocalPartitionSet() override;

  const grid::Topology& topology() const noexcept override { return topology_; }
  std::vector<NanoObject> snapshot(std::optional<ZRange> z_range) override;
  void insert(std::vector<std::vector<NanoObject>> per_partition) override;
  std::uint64_t remove(const std::vector<ObjectId>& ids) override;
  std::vector<std::vector<ObjectEnvelope>> local(StepIndex step) override;
  std::vector<std::vector<ObjectEnvelope>> deliver(std::vector<std::vector<ObjectEnvelope>> inbound) override;
  std::vector<std::vector<GhostBatch>> ghosts(int axis) override;
  void accept_ghosts(std::vector<std::vector<NanoObject>> inbound) override;
  std::vector<std::vector<ObjectEnvelope>> pairs(StepIndex step) override;
  std::vector<PartitionReport> report() override;

  PartitionWorld& world(grid::PartitionId id) { return worlds_.at(id); }

 private:
  grid::Topology topology_;
  std::unique_ptr<ThreadPool> pool_;
  std::vector<PartitionWorld> worlds_;
};

}  // namespace vesselsim::engine
