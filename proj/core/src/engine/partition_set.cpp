#include "vesselsim/engine/partition_set.hpp"

#include <algorithm>

#include "vesselsim/core/thread_pool.hpp"

namespace vesselsim::engine {

grid::Topology vessel_topology(const vessel::Scenario& scenario, std::uint32_t nx, std::uint32_t ny,
                               std::uint32_t nz) {
  const double r = scenario.cylinder().radius;
  const double h = scenario.half_length();
  return grid::split_volume({{-r, -r, -h}, {r, r, h}}, nx, ny, nz);
}

LocalPartitionSet::LocalPartitionSet(std::shared_ptr<const vessel::Scenario> scenario, grid::Topology topology,
                                     std::size_t workers)
    : topology_(std::move(topology)), pool_(std::make_unique<ThreadPool>(workers)) {
  worlds_.reserve(topology_.size());
  for (grid::PartitionId id = 0; id < topology_.size(); ++id) worlds_.emplace_back(scenario, topology_, id, pool_.get());
}

LocalPartitionSet::~LocalPartitionSet() = default;

std::vector<NanoObject> LocalPartitionSet::snapshot(std::optional<ZRange> z_range) {
  std::vector<NanoObject> out;
  for (const auto& w : worlds_) {
    auto part = w.snapshot(z_range);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end(), [](const NanoObject& a, const NanoObject& b) { return a.id < b.id; });
  return out;
}

void LocalPartitionSet::insert(std::vector<std::vector<NanoObject>> per_partition) {
  for (std::size_t p = 0; p < per_partition.size(); ++p) worlds_.at(p).insert(per_partition[p]);
}

std::uint64_t LocalPartitionSet::remove(const std::vector<ObjectId>& ids) {
  std::uint64_t n = 0;
  for (auto& w : worlds_) n += w.remove(ids);
  return n;
}

std::vector<std::vector<ObjectEnvelope>> LocalPartitionSet::local(StepIndex step) {
  std::vector<std::vector<ObjectEnvelope>> out;
  for (auto& w : worlds_) out.push_back(w.local_phase(step));
  return out;
}

std::vector<std::vector<ObjectEnvelope>> LocalPartitionSet::deliver(std::vector<std::vector<ObjectEnvelope>> inbound) {
  std::vector<std::vector<ObjectEnvelope>> out(worlds_.size());
  for (std::size_t p = 0; p < inbound.size(); ++p) out[p] = worlds_.at(p).deliver(inbound[p]);
  return out;
}

std::vector<std::vector<GhostBatch>> LocalPartitionSet::ghosts(int axis) {
  std::vector<std::vector<GhostBatch>> out;
  for (const auto& w : worlds_) out.push_back(w.ghosts(axis));
  return out;
}

void LocalPartitionSet::accept_ghosts(std::vector<std::vector<NanoObject>> inbound) {
  for (std::size_t p = 0; p < inbound.size(); ++p) worlds_.at(p).accept_ghosts(inbound[p]);
}

std::vector<std::vector<ObjectEnvelope>> LocalPartitionSet::pairs(StepIndex step) {
  std::vector<std::vector<ObjectEnvelope>> out;
  for (auto& w : worlds_) out.push_back(w.pair_phase(step));
  return out;
}

std::vector<PartitionReport> LocalPartitionSet::report() {
  std::vector<PartitionReport> out;
  for (auto& w : worlds_) out.push_back(w.report());
  return out;
}

}  // namespace vesselsim::engine
