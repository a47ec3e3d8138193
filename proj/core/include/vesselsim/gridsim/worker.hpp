#pragma once

#include <memory>

#include "vesselsim/engine/partition_world.hpp"
#include "vesselsim/gridsim/wire.hpp"

namespace vesselsim {
class ThreadPool;
}

namespace vesselsim::grid {

/// Partition side of the protocol: turns each request frame into exactly one
/// reply frame. Failures become ABORT replies instead of exceptions.
class WorkerServer {
 public:
  WorkerServer();
  ~WorkerServer();

  Frame handle(const Frame& request);
  bool finished() const noexcept { return finished_; }

 private:
  Frame dispatch(const Frame& request);
  engine::PartitionWorld& world();

  std::shared_ptr<const vessel::Scenario> scenario_;
  std::unique_ptr<ThreadPool> pool_;
  std::unique_ptr<engine::PartitionWorld> world_;
  bool finished_ = false;
};

/// READY, or PENDING when `envelopes` is non-empty, echoing `op`.
Frame make_transfer_reply(Op op, std::span<const engine::ObjectEnvelope> envelopes);

}  // namespace vesselsim::grid
