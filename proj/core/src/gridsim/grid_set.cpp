#include "vesselsim/gridsim/grid_set.hpp"

#include <algorithm>

#include "vesselsim/core/error.hpp"
#include "vesselsim/vessel/params.hpp"

namespace vesselsim::grid {

namespace {

Frame advance(ByteWriter w) { return {MessageType::Advance, w.take()}; }

ByteWriter advance_writer(Op op) {
  auto w = payload_writer();
  w.u8(static_cast<std::uint8_t>(op));
  return w;
}

}  // namespace

GridPartitionSet::GridPartitionSet(const vessel::Scenario& scenario, Topology topology,
                                   std::vector<std::unique_ptr<Endpoint>> endpoints,
                                   std::uint32_t workers_per_partition)
    : topology_(std::move(topology)), endpoints_(std::move(endpoints)) {
  if (endpoints_.size() != topology_.size()) {
    fail(ErrorKind::InvalidParameter, "grid needs " + std::to_string(topology_.size()) + " endpoints, got " +
                                          std::to_string(endpoints_.size()));
  }
  const auto json = vessel::to_json(scenario.params()).dump();
  const auto dims = topology_.dims();
  std::vector<Frame> hello;
  for (PartitionId id = 0; id < endpoints_.size(); ++id) {
    hello.push_back(make_hello({id, dims[0], dims[1], dims[2], workers_per_partition, json}));
  }
  for (const auto& f : exchange(hello)) open_reply(f, Op::Hello);
}

GridPartitionSet::~GridPartitionSet() {
  if (broken_) {
    for (auto& e : endpoints_) {
      try {
        e->send(make_abort("coordinator stopped"));
      } catch (...) {
      }
    }
    return;
  }
  try {
    broadcast(advance(advance_writer(Op::Shutdown)));
  } catch (...) {
  }
}

std::vector<Frame> GridPartitionSet::exchange(const std::vector<Frame>& requests) {
  std::vector<Frame> replies;
  try {
    for (std::size_t i = 0; i < endpoints_.size(); ++i) {
      ++counts_[static_cast<std::size_t>(requests[i].type)];
      endpoints_[i]->send(requests[i]);
    }
    for (std::size_t i = 0; i < endpoints_.size(); ++i) {
      replies.push_back(endpoints_[i]->receive());
      ++counts_[static_cast<std::size_t>(replies.back().type)];
      if (replies.back().type == MessageType::Abort) {
        fail(ErrorKind::Protocol, "partition " + std::to_string(i) + " aborted: " + read_abort(replies.back()));
      }
    }
  } catch (...) {
    broken_ = true;
    throw;
  }
  return replies;
}

std::vector<Frame> GridPartitionSet::broadcast(const Frame& request) {
  return exchange(std::vector<Frame>(endpoints_.size(), request));
}

ByteReader GridPartitionSet::open_reply(const Frame& f, Op op) {
  if (f.type != MessageType::Ready && f.type != MessageType::Pending) {
    fail(ErrorKind::Protocol, "unexpected " + std::string(to_string(f.type)) + " reply");
  }
  auto r = payload_reader(f);
  if (const auto got = static_cast<Op>(r.u8()); got != op) {
    fail(ErrorKind::Protocol, "reply for " + std::string(to_string(got)) + " while waiting for " +
                                  std::string(to_string(op)));
  }
  return r;
}

std::vector<NanoObject> GridPartitionSet::snapshot(std::optional<engine::ZRange> z_range) {
  auto w = advance_writer(Op::Snapshot);
  w.u8(z_range ? 1 : 0);
  w.f64(z_range ? z_range->first : 0.0);
  w.f64(z_range ? z_range->second : 0.0);
  std::vector<NanoObject> out;
  for (const auto& f : broadcast(advance(std::move(w)))) {
    auto r = open_reply(f, Op::Snapshot);
    auto part = read_objects(r);
    r.expect_done();
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end(), [](const NanoObject& a, const NanoObject& b) { return a.id < b.id; });
  return out;
}

void GridPartitionSet::insert(std::vector<std::vector<NanoObject>> per_partition) {
  per_partition.resize(endpoints_.size());
  std::vector<Frame> req;
  for (const auto& objs : per_partition) {
    auto w = advance_writer(Op::Insert);
    write_objects(w, objs);
    req.push_back(advance(std::move(w)));
  }
  for (const auto& f : exchange(req)) open_reply(f, Op::Insert).expect_done();
}

std::uint64_t GridPartitionSet::remove(const std::vector<ObjectId>& ids) {
  auto w = advance_writer(Op::Remove);
  w.u32(static_cast<std::uint32_t>(ids.size()));
  for (auto id : ids) w.u64(id);
  std::uint64_t n = 0;
  for (const auto& f : broadcast(advance(std::move(w)))) {
    auto r = open_reply(f, Op::Remove);
    n += r.u64();
    r.expect_done();
  }
  return n;
}

std::vector<std::vector<engine::ObjectEnvelope>> GridPartitionSet::transfer_replies(const std::vector<Frame>& replies,
                                                                                     Op op) {
  std::vector<std::vector<engine::ObjectEnvelope>> out;
  for (const auto& f : replies) {
    auto r = open_reply(f, op);
    out.push_back(read_envelopes(r));
    r.expect_done();
    if ((f.type == MessageType::Pending) != !out.back().empty()) fail(ErrorKind::Protocol, "PENDING flag mismatch");
  }
  return out;
}

std::vector<std::vector<engine::ObjectEnvelope>> GridPartitionSet::local(StepIndex step) {
  auto w = advance_writer(Op::Local);
  w.u64(step);
  return transfer_replies(broadcast(advance(std::move(w))), Op::Local);
}

std::vector<std::vector<engine::ObjectEnvelope>> GridPartitionSet::deliver(
    std::vector<std::vector<engine::ObjectEnvelope>> inbound) {
  inbound.resize(endpoints_.size());
  std::vector<Frame> req;
  for (const auto& list : inbound) {
    auto w = payload_writer();
    write_envelopes(w, list);
    req.push_back({MessageType::Envelope, w.take()});
  }
  return transfer_replies(exchange(req), Op::Deliver);
}

std::vector<std::vector<engine::GhostBatch>> GridPartitionSet::ghosts(int axis) {
  auto w = advance_writer(Op::Ghosts);
  w.u8(static_cast<std::uint8_t>(axis));
  std::vector<std::vector<engine::GhostBatch>> out;
  for (const auto& f : broadcast(advance(std::move(w)))) {
    auto r = open_reply(f, Op::Ghosts);
    const auto n = r.count(8);
    std::vector<engine::GhostBatch> batches;
    for (std::uint32_t i = 0; i < n; ++i) {
      engine::GhostBatch b;
      b.to = r.u32();
      b.objects = read_objects(r);
      batches.push_back(std::move(b));
    }
    r.expect_done();
    out.push_back(std::move(batches));
  }
  return out;
}

void GridPartitionSet::accept_ghosts(std::vector<std::vector<NanoObject>> inbound) {
  inbound.resize(endpoints_.size());
  std::vector<Frame> req;
  for (const auto& objs : inbound) {
    auto w = payload_writer();
    write_objects(w, objs);
    req.push_back({MessageType::Ghost, w.take()});
  }
  for (const auto& f : exchange(req)) open_reply(f, Op::AcceptGhosts).expect_done();
}

std::vector<std::vector<engine::ObjectEnvelope>> GridPartitionSet::pairs(StepIndex step) {
  auto w = advance_writer(Op::Pairs);
  w.u64(step);
  return transfer_replies(broadcast(advance(std::move(w))), Op::Pairs);
}

std::vector<engine::PartitionReport> GridPartitionSet::report() {
  std::vector<engine::PartitionReport> out;
  for (const auto& f : broadcast(advance(advance_writer(Op::Report)))) {
    auto r = open_reply(f, Op::Report);
    out.push_back(read_report(r));
    r.expect_done();
  }
  return out;
}

std::vector<std::unique_ptr<Endpoint>> local_endpoints(std::size_t count) {
  std::vector<std::unique_ptr<Endpoint>> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(std::make_unique<LocalEndpoint>());
  return out;
}

std::vector<std::unique_ptr<Endpoint>> tcp_endpoints(const std::vector<std::string>& addresses,
                                                     std::chrono::milliseconds timeout) {
  std::vector<std::unique_ptr<Endpoint>> out;
  for (const auto& a : addresses) out.push_back(TcpEndpoint::connect(a, timeout));
  return out;
}

}  // namespace vesselsim::grid
