#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <vector>

#include "vesselsim/engine/partition_set.hpp"
#include "vesselsim/gridsim/endpoint.hpp"

namespace vesselsim::grid {

/// Partitions reached through endpoints, one per partition id. Each phase is
/// sent to every partition before any reply is read, so remote partitions
/// work concurrently; replies are consumed in partition order.
class GridPartitionSet final : public engine::PartitionSet {
 public:
  /// Sends HELLO to every endpoint. `endpoints[i]` serves partition i.
  GridPartitionSet(const vessel::Scenario& scenario, Topology topology, std::vector<std::unique_ptr<Endpoint>> endpoints,
                   std::uint32_t workers_per_partition = 1);
  ~GridPartitionSet() override;

  const Topology& topology() const noexcept override { return topology_; }
  std::vector<NanoObject> snapshot(std::optional<engine::ZRange> z_range) override;
  void insert(std::vector<std::vector<NanoObject>> per_partition) override;
  std::uint64_t remove(const std::vector<ObjectId>& ids) override;
  std::vector<std::vector<engine::ObjectEnvelope>> local(StepIndex step) override;
  std::vector<std::vector<engine::ObjectEnvelope>> deliver(
      std::vector<std::vector<engine::ObjectEnvelope>> inbound) override;
  std::vector<std::vector<engine::GhostBatch>> ghosts(int axis) override;
  void accept_ghosts(std::vector<std::vector<NanoObject>> inbound) override;
  std::vector<std::vector<engine::ObjectEnvelope>> pairs(StepIndex step) override;
  std::vector<engine::PartitionReport> report() override;

  /// Frames exchanged so far, by message type (index = type value).
  const std::array<std::uint64_t, 8>& frame_counts() const noexcept { return counts_; }

 private:
  std::vector<Frame> exchange(const std::vector<Frame>& requests);
  std::vector<Frame> broadcast(const Frame& request);
  static ByteReader open_reply(const Frame& f, Op op);
  std::vector<std::vector<engine::ObjectEnvelope>> transfer_replies(const std::vector<Frame>& replies, Op op);

  Topology topology_;
  std::vector<std::unique_ptr<Endpoint>> endpoints_;
  std::array<std::uint64_t, 8> counts_{};
  bool broken_ = false;
};

/// In-process partitions behind LocalEndpoints.
std::vector<std::unique_ptr<Endpoint>> local_endpoints(std::size_t count);

/// Connects to "host:port" workers in order.
std::vector<std::unique_ptr<Endpoint>> tcp_endpoints(const std::vector<std::string>& addresses,
                                                     std::chrono::milliseconds timeout);

}  // namespace vesselsim::grid
