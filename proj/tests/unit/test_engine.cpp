#include <cmath>
#include <numeric>

#include "doctest.h"
#include "scenarios.hpp"
#include "trace.hpp"
#include "vesselsim/core/error.hpp"
#include "vesselsim/engine/pairs.hpp"
#include "vesselsim/engine/worklists.hpp"
#include "vesselsim/vessel/receptors.hpp"

using namespace vesselsim;
using namespace vesselsim::engine;
using doctest::Approx;

namespace {

std::unique_ptr<Simulation> make_sim(const vessel::ScenarioParams& p, std::size_t workers = 1) {
  const auto s = vessel::Scenario::build(p);
  return std::make_unique<Simulation>(s, std::make_unique<LocalPartitionSet>(s, vessel_topology(*s, 1, 1, 1), workers));
}

NanoObject object_at(const vessel::Scenario& s, ObjectId id, Kind k, Vec3 c, Vec3 v) {
  auto o = s.make_object(id, k, c);
  o.start = c;
  o.velocity = v;
  return o;
}

}  // namespace

TEST_CASE("worklists are contiguous id runs of near-equal size") {
  std::vector<ObjectId> ids(100);
  std::iota(ids.begin(), ids.end(), ObjectId{0});
  const auto lists = partition_worklists(ids, 4, 5);
  REQUIRE(lists.size() == 20);
  std::size_t expect = 0;
  for (const auto& l : lists) {
    CHECK(l.size() == 5);
    for (auto i : l) CHECK(i == expect++);
  }

  const std::vector<ObjectId> seven{70, 10, 30, 60, 20, 50, 40};
  const auto small = partition_worklists(seven, 1, 8);
  REQUIRE(small.size() == 8);
  for (std::size_t i = 0; i < 7; ++i) {
    REQUIRE(small[i].size() == 1);
    CHECK(seven[small[i][0]] == 10 * (i + 1));
  }
  CHECK(small[7].empty());
  CHECK(partition_worklists(seven, 1, 8) == small);
  CHECK_THROWS_AS(partition_worklists(seven, 0, 4), Error);
}

TEST_CASE("phase order") {
  CHECK(to_string(kPhaseOrder.front()) == "transmission");
  CHECK(to_string(kPhaseOrder.back()) == "relocation");
}

TEST_CASE("an empty vessel stays empty") {
  auto sim = make_sim(testing::empty_vessel());
  sim->populate();
  for (int i = 0; i < 10; ++i) {
    const auto r = sim->step();
    CHECK(r.live == std::array<std::uint64_t, kKindCount>{});
    CHECK(r.ledger == Ledger{});
    CHECK(r.activated == std::vector<std::uint64_t>(4, 0));
  }
  CHECK(sim->clock() == 10);
}

TEST_CASE("a ballistic probe at rest does not move") {
  auto p = testing::empty_vessel();
  p.mean_flow_velocity = 0.0;
  p.probes.push_back({Kind::RedCell, Mobility::Ballistic, {3e-6, -2e-6, 10e-6}, {}, 0.0});
  auto sim = make_sim(p);
  sim->populate();
  for (int i = 0; i < 50; ++i) sim->step();
  const auto objs = sim->objects();
  REQUIRE(objs.size() == 1);
  CHECK(objs[0].center == Vec3{3e-6, -2e-6, 10e-6});
  CHECK(objs[0].velocity == Vec3{});
}

TEST_CASE("a ballistic probe crosses the vessel at its own velocity") {
  auto p = testing::empty_vessel();
  p.probes.push_back({Kind::Platelet, Mobility::Ballistic, {0.0, 0.0, 0.0}, {0.0, 0.0, 1e-3}, 0.0});
  auto sim = make_sim(p);
  sim->populate();
  for (int i = 0; i < 20; ++i) sim->step();
  const auto objs = sim->objects();
  REQUIRE(objs.size() == 1);
  CHECK(objs[0].center.z == Approx(20 * 5e-6 * 1e-3).epsilon(1e-12));
}

TEST_CASE("a carrier hitting the bare wall bounces with the wall restitution") {
  auto p = testing::empty_vessel();
  const double rc = p.kind(Kind::Carrier).radius;
  // Lead-in wall: no receptors, so the carrier must bounce.
  const Vec3 c{30e-6 - rc - 2e-9, 0.0, -130e-6};
  p.probes.push_back({Kind::Carrier, Mobility::Ballistic, c, {1e-3, 0.0, 0.0}, 0.0});
  auto sim = make_sim(p);
  sim->populate();
  const auto r = sim->step();
  CHECK(r.wall_contacts == 1);
  const auto objs = sim->objects();
  REQUIRE(objs.size() == 1);
  CHECK(objs[0].velocity.x == Approx(-0.6e-3));
  CHECK(objs[0].velocity.y == Approx(0.0));
  CHECK(std::hypot(objs[0].center.x, objs[0].center.y) + rc < 30e-6);
  CHECK(sim->ledger().assimilated == 0);
}

TEST_CASE("objects leaving through the outlet are destroyed and counted") {
  auto p = testing::empty_vessel();
  p.probes.push_back({Kind::Platelet, Mobility::Ballistic, {0.0, 0.0, 150e-6 - 1e-6 - 2e-9}, {0.0, 0.0, 1e-3}, 0.0});
  auto sim = make_sim(p);
  sim->populate();
  const auto r = sim->step();
  CHECK(r.live[index_of(Kind::Platelet)] == 0);
  CHECK(r.ledger.exited[index_of(Kind::Platelet)] == 1);
  CHECK(sim->objects().empty());
}

TEST_CASE("pair resolution conserves momentum between free cells") {
  const auto s = vessel::Scenario::build(testing::empty_vessel());
  const auto a = object_at(*s, 1, Kind::RedCell, {0.0, 0.0, 0.0}, {1e-3, 0.0, 0.0});
  const auto b = object_at(*s, 2, Kind::Platelet, {4.4e-6, 0.5e-6, 0.0}, {-2e-3, 0.0, 0.0});
  const auto out = resolve_pair(a, b, *s, 5e-6);
  CHECK(out.first.contact);
  const Vec3 dp = out.first.velocity_change * a.mass + out.second.velocity_change * b.mass;
  CHECK(norm(dp) <= 1e-12 * a.mass * 1e-3);
  // Afterwards the pair no longer overlaps.
  CHECK(norm((b.center + out.second.displacement) - (a.center + out.first.displacement)) >= a.radius + b.radius);
  // Swapped arguments are rejected.
  CHECK_THROWS_AS(resolve_pair(b, a, *s, 5e-6), Error);
}

TEST_CASE("separating pairs are only pushed apart") {
  const auto s = vessel::Scenario::build(testing::empty_vessel());
  const auto a = object_at(*s, 1, Kind::RedCell, {0.0, 0.0, 0.0}, {-1e-3, 0.0, 0.0});
  const auto b = object_at(*s, 2, Kind::RedCell, {6.9e-6, 0.0, 0.0}, {1e-3, 0.0, 0.0});
  const auto out = resolve_pair(a, b, *s, 5e-6);
  CHECK(out.first.velocity_change == Vec3{});
  CHECK(out.second.velocity_change == Vec3{});
  CHECK(out.first.displacement.x < 0.0);
  CHECK(out.second.displacement.x > 0.0);
}

TEST_CASE("a fixed partner takes no part of the response") {
  const auto s = vessel::Scenario::build(testing::empty_vessel());
  auto a = object_at(*s, 1, Kind::RedCell, {0.0, 0.0, 0.0}, {});
  a.mobility = Mobility::Fixed;
  const auto b = object_at(*s, 2, Kind::Platelet, {4.4e-6, 0.0, 0.0}, {-1e-3, 0.0, 0.0});
  const auto out = resolve_pair(a, b, *s, 5e-6);
  CHECK(out.first.displacement == Vec3{});
  CHECK(out.first.velocity_change == Vec3{});
  CHECK((b.velocity + out.second.velocity_change).x == Approx(0.6e-3));
}

TEST_CASE("carriers are absorbed only at receptors of receptive cells") {
  const auto s = vessel::Scenario::build(testing::empty_vessel());
  const double rc = s->kind(Kind::Carrier).radius;

  const auto red = object_at(*s, 1, Kind::RedCell, {}, {});
  const auto c1 = object_at(*s, 2, Kind::Carrier, {3.5e-6 + rc, 0.0, 0.0}, {});
  CHECK_FALSE(resolve_pair(red, c1, *s, 5e-6).second.absorbed);

  const auto white = object_at(*s, 3, Kind::WhiteCell, {}, {});
  const auto dirs = vessel::sphere_receptor_directions(s->params().seed, make_stream(StreamTag::WhiteReceptors, 3),
                                                       s->params().white_receptors);
  const auto hit = object_at(*s, 4, Kind::Carrier, dirs[0] * (5e-6 + rc), {});
  CHECK(resolve_pair(white, hit, *s, 5e-6).second.absorbed);

  // A direction well between receptors.
  Vec3 miss_dir = normalized(dirs[0] + Vec3{0.0, 0.0, 0.03});
  REQUIRE_FALSE(vessel::nearest_sphere_receptor(dirs, 5e-6, miss_dir, 4e-9 + rc).has_value());
  const auto miss = object_at(*s, 5, Kind::Carrier, miss_dir * (5e-6 + rc), {});
  const auto out = resolve_pair(white, miss, *s, 5e-6);
  CHECK_FALSE(out.second.absorbed);
  CHECK(out.second.contact);
}

TEST_CASE("carrier collisions can be switched off") {
  auto p = testing::empty_vessel();
  p.carrier_collisions = false;
  const auto s = vessel::Scenario::build(p);
  const auto red = object_at(*s, 1, Kind::RedCell, {}, {});
  const auto c = object_at(*s, 2, Kind::Carrier, {3.5e-6, 0.0, 0.0}, {});
  CHECK_FALSE(resolve_pair(red, c, *s, 5e-6).second.contact);
}

TEST_CASE("carrier and object ledgers balance every step") {
  auto p = testing::small_vessel();
  p.steps = 200;
  p.emit_step = 2;
  auto sim = make_sim(p);
  sim->populate();
  for (StepIndex i = 0; i < p.steps; ++i) {
    const auto r = sim->step();
    const auto& l = r.ledger;
    const auto carriers = r.live[index_of(Kind::Carrier)];
    CHECK(l.emitted == carriers + l.assimilated + l.absorbed + l.exited[index_of(Kind::Carrier)]);
    std::uint64_t live = 0, exited = 0;
    for (Kind k : kAllKinds) {
      live += r.live[index_of(k)];
      exited += l.exited[index_of(k)];
    }
    CHECK(l.inserted == live + l.assimilated + l.absorbed + exited);
    CHECK(r.time == Approx(static_cast<double>(r.step) * p.dt));
  }
  CHECK(sim->ledger().emitted == p.burst_size);
}

TEST_CASE("results do not depend on the worker count") {
  auto p = testing::small_vessel();
  p.steps = 60;
  const auto one = testing::run_local(p, 1, 1, 1, 1);
  const auto three = testing::run_local(p, 1, 1, 1, 3);
  CHECK(one == three);
  CHECK(one.ledgers.back().emitted == p.burst_size);
}

TEST_CASE("checkpoint round trip and bit-exact resume") {
  auto p = testing::small_vessel();
  p.steps = 40;
  auto straight = make_sim(p);
  straight->populate();
  for (int i = 0; i < 20; ++i) straight->step();
  const auto state = straight->capture();
  const auto bytes = encode_checkpoint(state);
  const auto back = decode_checkpoint(bytes);
  CHECK(back.step == 20);
  CHECK(back.objects == state.objects);
  CHECK(back.ledger == state.ledger);
  CHECK(back.pending == state.pending);
  CHECK(encode_checkpoint(back) == bytes);

  auto resumed = make_sim(p);
  resumed->restore(back);
  const auto a = testing::run_trace(*straight, 20);
  const auto b = testing::run_trace(*resumed, 20);
  CHECK(a == b);

  auto corrupt = bytes;
  corrupt[0] = 'X';
  CHECK_THROWS_AS(decode_checkpoint(corrupt), Error);
  auto truncated = bytes;
  truncated.resize(truncated.size() / 2);
  CHECK_THROWS_AS(decode_checkpoint(truncated), Error);
  auto other = p;
  other.seed = 9;
  auto mismatched = make_sim(other);
  CHECK_THROWS_AS(mismatched->restore(back), Error);
}

TEST_CASE("checkpoint files are written atomically") {
  auto p = testing::small_vessel();
  auto sim = make_sim(p);
  sim->populate();
  sim->step();
  const auto dir = std::filesystem::temp_directory_path() / "vesselsim_ckpt_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "state.ckpt";
  write_checkpoint(path, sim->capture());
  CHECK(read_checkpoint(path).objects == sim->objects());
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove_all(dir);
}
