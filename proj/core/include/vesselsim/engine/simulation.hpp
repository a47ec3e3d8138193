#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <string_view>
#include <vector>

#include "vesselsim/engine/partition_set.hpp"
#include "vesselsim/reception/receivers.hpp"
#include "vesselsim/vessel/params.hpp"
#include "vesselsim/vessel/scenario.hpp"

namespace vesselsim::engine {

/// Step phases in execution order.
enum class Phase : std::uint8_t {
  Transmission,
  Reception,
  InformationProcessing,
  Motion,
  Destruction,
  CollisionCheck,
  Relocation,
};
inline constexpr std::array<Phase, 7> kPhaseOrder{Phase::Transmission,  Phase::Reception,      Phase::InformationProcessing,
                                                   Phase::Motion,        Phase::Destruction,    Phase::CollisionCheck,
                                                   Phase::Relocation};
std::string_view to_string(Phase p) noexcept;

/// Cumulative carrier and object bookkeeping.
struct Ledger {
  std::uint64_t emitted = 0;      ///< carriers released by the transmitter
  std::uint64_t assimilated = 0;  ///< carriers taken up by endothelial receptors
  std::uint64_t absorbed = 0;     ///< carriers taken up by cell receptors
  std::array<std::uint64_t, kKindCount> exited{};
  std::uint64_t created = 0;  ///< cells inserted at the inlet after seeding
  std::uint64_t inserted = 0;  ///< every object ever inserted
  friend bool operator==(const Ledger&, const Ledger&) = default;
};

/// One hop of one object during a transfer round.
struct TransferRecord {
  std::uint32_t round = 0;
  ObjectId object = 0;
  grid::PartitionId from = 0;
  grid::PartitionId to = 0;
};

struct StepReport {
  StepIndex step = 0;  ///< clock value after the step
  double time = 0.0;
  std::array<std::uint64_t, kKindCount> live{};
  Ledger ledger{};
  std::vector<std::uint64_t> activated;  ///< per threshold
  std::uint32_t transfer_rounds = 0;
  std::uint64_t envelopes = 0;
  std::uint64_t wall_contacts = 0;
  std::uint64_t pair_contacts = 0;
  std::uint64_t clamped = 0;
};

/// Everything needed to continue a run bit-exactly.
struct CheckpointState {
  vessel::ScenarioParams params{};
  StepIndex step = 0;
  ObjectId next_id = 0;
  Ledger ledger{};
  std::vector<reception::AssimilationEvent> pending;
  std::map<std::uint32_t, reception::ReceiverState> receivers;
  std::vector<NanoObject> objects;  ///< sorted by id
};

void write_checkpoint(const std::filesystem::path& path, const CheckpointState& state);
CheckpointState read_checkpoint(const std::filesystem::path& path);
std::vector<std::uint8_t> encode_checkpoint(const CheckpointState& state);
CheckpointState decode_checkpoint(std::span<const std::uint8_t> bytes);

/// Coordinator of a run: owns the clock, the receivers and the ledgers, and
/// drives the partitions through each step.
class Simulation {
 public:
  Simulation(std::shared_ptr<const vessel::Scenario> scenario, std::unique_ptr<PartitionSet> partitions);

  /// Initial population: seeded blood and probes.
  void populate();
  /// Continues from a checkpoint. The partitions must be empty.
  void restore(const CheckpointState& state);
  CheckpointState capture();

  StepReport step();
  /// Folds events still waiting for the next reception phase (end of run).
  void drain();

  StepIndex clock() const noexcept { return step_; }
  const Ledger& ledger() const noexcept { return ledger_; }
  const reception::ReceiverBank& receivers() const noexcept { return bank_; }
  const vessel::Scenario& scenario() const noexcept { return *scenario_; }
  PartitionSet& partitions() noexcept { return *set_; }
  std::array<std::uint64_t, kKindCount> live() const noexcept { return live_; }
  const std::vector<TransferRecord>& last_transfers() const noexcept { return transfers_; }
  std::vector<NanoObject> objects() { return set_->snapshot(std::nullopt); }

 private:
  void insert(std::vector<NanoObject> objects);
  void transmission();
  std::uint32_t transfer(std::vector<std::vector<ObjectEnvelope>> outbound, std::uint64_t& envelopes);
  void exchange_ghosts();
  void check_ledger(const StepReport& r) const;

  std::shared_ptr<const vessel::Scenario> scenario_;
  std::unique_ptr<PartitionSet> set_;
  reception::ReceiverBank bank_;
  StepIndex step_ = 0;
  ObjectId next_id_ = 0;
  Ledger ledger_{};
  std::array<std::uint64_t, kKindCount> live_{};
  std::vector<reception::AssimilationEvent> pending_;
  std::vector<TransferRecord> transfers_;
};

}  // namespace vesselsim::engine
