#include "vesselsim/engine/simulation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

#include "vesselsim/core/bytes.hpp"
#include "vesselsim/core/error.hpp"
#include "vesselsim/vessel/blood.hpp"

namespace vesselsim::engine {

std::string_view to_string(Phase p) noexcept {
  switch (p) {
    case Phase::Transmission: return "transmission";
    case Phase::Reception: return "reception";
    case Phase::InformationProcessing: return "information-processing";
    case Phase::Motion: return "motion";
    case Phase::Destruction: return "destruction";
    case Phase::CollisionCheck: return "collision-check";
    case Phase::Relocation: return "relocation";
  }
  return "unknown";
}

Simulation::Simulation(std::shared_ptr<const vessel::Scenario> scenario, std::unique_ptr<PartitionSet> partitions)
    : scenario_(std::move(scenario)),
      set_(std::move(partitions)),
      bank_(scenario_->params().thresholds, scenario_->params().emit_step, scenario_->params().dt) {}

void Simulation::insert(std::vector<NanoObject> objects) {
  std::vector<std::vector<NanoObject>> routed(set_->topology().size());
  for (auto& o : objects) {
    ++live_[index_of(o.kind)];
    ++ledger_.inserted;
    routed[set_->topology().owner_of(o.center)].push_back(std::move(o));
  }
  set_->insert(std::move(routed));
}

void Simulation::populate() {
  if (ledger_.inserted != 0) fail(ErrorKind::InvariantBreach, "simulation already populated");
  std::vector<NanoObject> objects;
  if (scenario_->params().seed_blood) objects = vessel::seed_blood(*scenario_, next_id_);
  auto probes = vessel::make_probes(*scenario_, next_id_);
  // Carrier probes enter the carrier ledger as if released.
  for (const auto& o : probes) ledger_.emitted += o.kind == Kind::Carrier ? 1 : 0;
  objects.insert(objects.end(), probes.begin(), probes.end());
  insert(std::move(objects));
}

void Simulation::transmission() {
  const auto& p = scenario_->params();
  if (p.continuous_creation) {
    const auto target = scenario_->target_counts();
    bool deficit = false;
    for (Kind k : kAllKinds) deficit = deficit || live_[index_of(k)] < target[index_of(k)];
    if (deficit) {
      const auto nearby = set_->snapshot(vessel::creation_region(*scenario_));
      auto fresh = vessel::maintain_concentration(*scenario_, nearby, live_, step_, next_id_);
      ledger_.created += fresh.size();
      insert(std::move(fresh));
    }
  }
  if (p.transmitter && step_ == p.emit_step) {
    const auto all = set_->snapshot(std::nullopt);
    auto placed = vessel::place_transmitter(*scenario_, all, next_id_);
    std::vector<ObjectId> moved;
    for (const auto& o : placed.displaced) moved.push_back(o.id);
    if (set_->remove(moved) != moved.size()) fail(ErrorKind::InvariantBreach, "displaced object missing");
    for (const auto& o : placed.displaced) --live_[index_of(o.kind)];
    ledger_.inserted -= moved.size();
    auto burst = vessel::emit_burst(*scenario_, placed.transmitter, p.burst_size, next_id_);
    ledger_.emitted += burst.size();
    std::vector<NanoObject> out = std::move(placed.displaced);
    out.push_back(placed.transmitter);
    out.insert(out.end(), burst.begin(), burst.end());
    insert(std::move(out));
  }
}

std::uint32_t Simulation::transfer(std::vector<std::vector<ObjectEnvelope>> outbound, std::uint64_t& envelopes) {
  const auto& topo = set_->topology();
  std::uint32_t rounds = 0;
  for (;;) {
    const bool any = std::any_of(outbound.begin(), outbound.end(), [](const auto& v) { return !v.empty(); });
    if (!any) break;
    ++rounds;
    if (rounds > 3) fail(ErrorKind::InvariantBreach, "transfer did not settle within three rounds");
    std::vector<std::vector<ObjectEnvelope>> inbound(topo.size());
    for (auto& list : outbound) {
      for (auto& env : list) {
        const auto to = topo.at(env.holder).neighbor(env.via);
        if (!to) fail(ErrorKind::InvariantBreach, "transfer through a face without a neighbor");
        transfers_.push_back({rounds, env.object.id, env.holder, *to});
        ++envelopes;
        inbound[*to].push_back(std::move(env));
      }
    }
    outbound = set_->deliver(std::move(inbound));
  }
  return rounds;
}

void Simulation::exchange_ghosts() {
  const auto n = set_->topology().size();
  if (n == 1) return;
  for (int axis = 0; axis < 3; ++axis) {
    if (set_->topology().dims()[axis] == 1) continue;
    auto batches = set_->ghosts(axis);
    std::vector<std::vector<NanoObject>> inbound(n);
    for (auto& list : batches) {
      for (auto& b : list) inbound.at(b.to).insert(inbound[b.to].end(), b.objects.begin(), b.objects.end());
    }
    set_->accept_ghosts(std::move(inbound));
  }
}

StepReport Simulation::step() {
  transfers_.clear();
  transmission();

  // Reception and information processing: last step's events, in (step, carrier) order.
  bank_.fold(pending_, *scenario_);
  pending_.clear();

  StepReport r;
  const auto first = set_->local(step_);
  r.transfer_rounds = transfer(first, r.envelopes);
  exchange_ghosts();
  const auto second = set_->pairs(step_);
  r.transfer_rounds = std::max(r.transfer_rounds, transfer(second, r.envelopes));

  auto reports = set_->report();
  live_ = {};
  for (auto& pr : reports) {
    for (std::size_t k = 0; k < kKindCount; ++k) {
      live_[k] += pr.live[k];
      ledger_.exited[k] += pr.exited[k];
    }
    ledger_.absorbed += pr.absorbed;
    r.wall_contacts += pr.wall_contacts;
    r.pair_contacts += pr.pair_contacts;
    r.clamped += pr.clamped;
    pending_.insert(pending_.end(), pr.events.begin(), pr.events.end());
  }
  reception::sort_events(pending_);
  ledger_.assimilated += pending_.size();

  ++step_;
  r.step = step_;
  r.time = static_cast<double>(step_) * scenario_->params().dt;
  r.live = live_;
  r.ledger = ledger_;
  r.activated = bank_.activated();
  check_ledger(r);
  return r;
}

void Simulation::check_ledger(const StepReport& r) const {
  const auto& l = r.ledger;
  const auto carriers = r.live[index_of(Kind::Carrier)];
  if (l.emitted != carriers + l.assimilated + l.absorbed + l.exited[index_of(Kind::Carrier)]) {
    fail(ErrorKind::InvariantBreach,
         "carrier ledger broken at step " + std::to_string(r.step) + ": emitted " + std::to_string(l.emitted) +
             " != live " + std::to_string(carriers) + " + assimilated " + std::to_string(l.assimilated) +
             " + absorbed " + std::to_string(l.absorbed) + " + exited " +
             std::to_string(l.exited[index_of(Kind::Carrier)]));
  }
  const auto live = std::accumulate(r.live.begin(), r.live.end(), std::uint64_t{0});
  const auto gone = std::accumulate(l.exited.begin(), l.exited.end(), l.assimilated + l.absorbed);
  if (l.inserted != live + gone) {
    fail(ErrorKind::InvariantBreach, "object ledger broken at step " + std::to_string(r.step) + ": inserted " +
                                         std::to_string(l.inserted) + " != live " + std::to_string(live) +
                                         " + removed " + std::to_string(gone));
  }
}

void Simulation::drain() {
  bank_.fold(pending_, *scenario_);
  pending_.clear();
}

CheckpointState Simulation::capture() {
  CheckpointState s;
  s.params = scenario_->params();
  s.step = step_;
  s.next_id = next_id_;
  s.ledger = ledger_;
  s.pending = pending_;
  s.receivers = bank_.states();
  s.objects = set_->snapshot(std::nullopt);
  return s;
}

void Simulation::restore(const CheckpointState& state) {
  if (ledger_.inserted != 0 || !set_->snapshot(std::nullopt).empty()) {
    fail(ErrorKind::InvariantBreach, "restore needs an empty simulation");
  }
  if (!(state.params == scenario_->params())) fail(ErrorKind::InvalidParameter, "checkpoint parameters differ");
  step_ = state.step;
  next_id_ = state.next_id;
  pending_ = state.pending;
  std::uint64_t total = 0;
  for (const auto& [cell, st] : state.receivers) total += st.assimilated;
  bank_.restore(state.receivers, total);
  insert(state.objects);
  ledger_ = state.ledger;
}

namespace {

constexpr char kMagic[8] = {'V', 'S', 'C', 'K', 'P', 'T', '\0', '\0'};
constexpr std::uint32_t kCheckpointVersion = 1;

}  // namespace

std::vector<std::uint8_t> encode_checkpoint(const CheckpointState& s) {
  ByteWriter w;
  for (char c : kMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u32(kCheckpointVersion);
  w.str(vessel::to_json(s.params).dump());
  w.u64(s.step);
  w.u64(s.next_id);
  w.u64(s.ledger.emitted);
  w.u64(s.ledger.assimilated);
  w.u64(s.ledger.absorbed);
  for (auto e : s.ledger.exited) w.u64(e);
  w.u64(s.ledger.created);
  w.u64(s.ledger.inserted);
  w.u32(static_cast<std::uint32_t>(s.pending.size()));
  for (const auto& e : s.pending) {
    w.u64(e.step);
    w.u64(e.carrier);
    w.u32(e.cell);
    w.u32(e.receptor);
  }
  w.u32(static_cast<std::uint32_t>(s.receivers.size()));
  for (const auto& [cell, st] : s.receivers) {
    w.u32(cell);
    w.u64(st.assimilated);
    w.f64(st.phi);
    w.f64(st.z);
    w.u32(static_cast<std::uint32_t>(st.activated_at.size()));
    for (const auto& a : st.activated_at) {
      w.u8(a ? 1 : 0);
      w.u64(a.value_or(0));
    }
  }
  w.u32(static_cast<std::uint32_t>(s.objects.size()));
  for (const auto& o : s.objects) write_object(w, o);
  return w.take();
}

CheckpointState decode_checkpoint(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  for (char c : kMagic) {
    if (r.u8() != static_cast<std::uint8_t>(c)) fail(ErrorKind::Io, "not a vesselsim checkpoint");
  }
  if (const auto v = r.u32(); v != kCheckpointVersion) {
    fail(ErrorKind::Io, "unsupported checkpoint version " + std::to_string(v));
  }
  CheckpointState s;
  s.params = vessel::params_from_json(nlohmann::json::parse(r.str()));
  s.step = r.u64();
  s.next_id = r.u64();
  s.ledger.emitted = r.u64();
  s.ledger.assimilated = r.u64();
  s.ledger.absorbed = r.u64();
  for (auto& e : s.ledger.exited) e = r.u64();
  s.ledger.created = r.u64();
  s.ledger.inserted = r.u64();
  const auto np = r.count(24);
  for (std::uint32_t i = 0; i < np; ++i) {
    reception::AssimilationEvent e;
    e.step = r.u64();
    e.carrier = r.u64();
    e.cell = r.u32();
    e.receptor = r.u32();
    s.pending.push_back(e);
  }
  const auto nr = r.count(32);
  for (std::uint32_t i = 0; i < nr; ++i) {
    reception::ReceiverState st;
    st.cell = r.u32();
    st.assimilated = r.u64();
    st.phi = r.f64();
    st.z = r.f64();
    const auto nt = r.count(9);
    for (std::uint32_t k = 0; k < nt; ++k) {
      const bool set = r.u8() != 0;
      const auto v = r.u64();
      st.activated_at.push_back(set ? std::optional<StepIndex>(v) : std::nullopt);
    }
    s.receivers.emplace(st.cell, std::move(st));
  }
  const auto no = r.count(kObjectWireSize);
  s.objects.reserve(no);
  for (std::uint32_t i = 0; i < no; ++i) s.objects.push_back(read_object(r));
  r.expect_done();
  return s;
}

void write_checkpoint(const std::filesystem::path& path, const CheckpointState& state) {
  const auto bytes = encode_checkpoint(state);
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::Io, "cannot write " + tmp);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) fail(ErrorKind::Io, "write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

CheckpointState read_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot read " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes);
}

}  // namespace vesselsim::engine
