#include "vesselsim/gridsim/worker.hpp"

#include <nlohmann/json.hpp>

#include "vesselsim/core/error.hpp"
#include "vesselsim/core/thread_pool.hpp"
#include "vesselsim/engine/partition_set.hpp"
#include "vesselsim/vessel/params.hpp"

namespace vesselsim::grid {

WorkerServer::WorkerServer() = default;
WorkerServer::~WorkerServer() = default;

engine::PartitionWorld& WorkerServer::world() {
  if (!world_) fail(ErrorKind::Protocol, "partition used before HELLO");
  return *world_;
}

Frame make_transfer_reply(Op op, std::span<const engine::ObjectEnvelope> envelopes) {
  auto w = payload_writer();
  w.u8(static_cast<std::uint8_t>(op));
  write_envelopes(w, envelopes);
  return {envelopes.empty() ? MessageType::Ready : MessageType::Pending, w.take()};
}

namespace {

Frame ready(Op op) {
  auto w = payload_writer();
  w.u8(static_cast<std::uint8_t>(op));
  return {MessageType::Ready, w.take()};
}

}  // namespace

Frame WorkerServer::handle(const Frame& request) {
  try {
    return dispatch(request);
  } catch (const std::exception& e) {
    finished_ = true;
    return make_abort(e.what());
  }
}

Frame WorkerServer::dispatch(const Frame& request) {
  switch (request.type) {
    case MessageType::Hello: {
      const auto h = read_hello(request);
      const auto params = vessel::params_from_json(nlohmann::json::parse(h.params_json));
      scenario_ = vessel::Scenario::build(params);
      pool_ = std::make_unique<ThreadPool>(h.workers);
      auto topo = engine::vessel_topology(*scenario_, h.nx, h.ny, h.nz);
      world_ = std::make_unique<engine::PartitionWorld>(scenario_, std::move(topo), h.partition, pool_.get());
      return ready(Op::Hello);
    }
    case MessageType::Envelope: {
      auto r = payload_reader(request);
      const auto in = read_envelopes(r);
      r.expect_done();
      return make_transfer_reply(Op::Deliver, world().deliver(in));
    }
    case MessageType::Ghost: {
      auto r = payload_reader(request);
      const auto in = read_objects(r);
      r.expect_done();
      world().accept_ghosts(in);
      return ready(Op::AcceptGhosts);
    }
    case MessageType::Abort:
      finished_ = true;
      return ready(Op::Shutdown);
    case MessageType::Advance:
      break;
    default:
      fail(ErrorKind::Protocol, "unexpected " + std::string(to_string(request.type)) + " at a partition");
  }

  auto r = payload_reader(request);
  const auto op = static_cast<Op>(r.u8());
  auto w = payload_writer();
  w.u8(static_cast<std::uint8_t>(op));
  switch (op) {
    case Op::Snapshot: {
      const bool ranged = r.u8() != 0;
      const double lo = r.f64();
      const double hi = r.f64();
      r.expect_done();
      write_objects(w, world().snapshot(ranged ? std::optional<engine::ZRange>({lo, hi}) : std::nullopt));
      return {MessageType::Ready, w.take()};
    }
    case Op::Insert: {
      const auto objs = read_objects(r);
      r.expect_done();
      world().insert(objs);
      return {MessageType::Ready, w.take()};
    }
    case Op::Remove: {
      const auto n = r.count(8);
      std::vector<ObjectId> ids(n);
      for (auto& id : ids) id = r.u64();
      r.expect_done();
      w.u64(world().remove(ids));
      return {MessageType::Ready, w.take()};
    }
    case Op::Local: {
      const auto step = r.u64();
      r.expect_done();
      return make_transfer_reply(op, world().local_phase(step));
    }
    case Op::Ghosts: {
      const int axis = r.u8();
      r.expect_done();
      if (axis > 2) fail(ErrorKind::Protocol, "bad ghost axis");
      const auto batches = world().ghosts(axis);
      w.u32(static_cast<std::uint32_t>(batches.size()));
      for (const auto& b : batches) {
        w.u32(b.to);
        write_objects(w, b.objects);
      }
      return {MessageType::Ready, w.take()};
    }
    case Op::Pairs: {
      const auto step = r.u64();
      r.expect_done();
      return make_transfer_reply(op, world().pair_phase(step));
    }
    case Op::Report: {
      r.expect_done();
      write_report(w, world().report());
      return {MessageType::Ready, w.take()};
    }
    case Op::Shutdown:
      finished_ = true;
      return {MessageType::Ready, w.take()};
    default:
      break;
  }
  fail(ErrorKind::Protocol, "unknown partition op " + std::to_string(static_cast<int>(op)));
}

}  // namespace vesselsim::grid
