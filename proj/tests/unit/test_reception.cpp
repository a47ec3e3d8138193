#include <algorithm>

#include "doctest.h"
#include "scenarios.hpp"
#include "vesselsim/core/error.hpp"
#include "vesselsim/reception/receivers.hpp"
#include "vesselsim/vessel/scenario.hpp"

using namespace vesselsim;
using namespace vesselsim::reception;
using doctest::Approx;

namespace {

std::shared_ptr<const vessel::Scenario> scenario() {
  static const auto s = vessel::Scenario::build(testing::small_vessel());
  return s;
}

}  // namespace

TEST_CASE("threshold decoding") {
  CHECK(decode(1, 1));
  CHECK_FALSE(decode(4, 5));
  CHECK(decode(5, 5));
  CHECK_FALSE(decode(0, 1));
  CHECK_THROWS_AS(decode(3, 0), Error);
}

TEST_CASE("activation time from step arithmetic") {
  CHECK(activation_time(40000 + 200000, 40000, 5e-6) == Approx(1.0).epsilon(1e-12));
  CHECK(activation_time(7, 7, 5e-6) == 0.0);
  CHECK_THROWS_AS(activation_time(6, 7, 5e-6), Error);
}

TEST_CASE("tenth assimilation activates at S = 10") {
  const auto s = scenario();
  ReceiverBank bank({1, 10}, 40000, 5e-6);
  std::vector<AssimilationEvent> events;
  for (std::uint64_t i = 0; i < 9; ++i) events.push_back({40000 + 1000 * (i + 1), i, 17, 0});
  bank.fold(events, *s);
  CHECK(bank.activated() == std::vector<std::uint64_t>{1, 0});
  const std::vector<AssimilationEvent> tenth{{240000, 99, 17, 3}};
  bank.fold(tenth, *s);
  CHECK(bank.activated() == std::vector<std::uint64_t>{1, 1});
  const auto fp = bank.footprint();
  REQUIRE(fp.size() == 2);
  CHECK(fp[0].threshold == 1);
  CHECK(fp[0].t_activation == Approx(1000 * 5e-6));
  CHECK(fp[1].threshold == 10);
  CHECK(fp[1].t_activation == Approx(1.0));
  CHECK(fp[1].assimilated == 10);
  const auto [phi, z] = cell_coordinates(*s, 17);
  CHECK(fp[1].phi == phi);
  CHECK(fp[1].z == z);
}

TEST_CASE("no activations give an empty footprint") {
  ReceiverBank bank({1, 2, 5, 10}, 5, 5e-6);
  CHECK(bank.footprint().empty());
  CHECK(bank.activated() == std::vector<std::uint64_t>(4, 0));
  CHECK(bank.total_assimilated() == 0);
}

TEST_CASE("events must arrive in step then carrier order") {
  const auto s = scenario();
  ReceiverBank bank({1}, 0, 5e-6);
  const std::vector<AssimilationEvent> swapped{{3, 8, 1, 0}, {3, 2, 1, 0}};
  CHECK_THROWS_AS(bank.fold(swapped, *s), Error);
  std::vector<AssimilationEvent> e = swapped;
  e.push_back({1, 50, 2, 0});
  sort_events(e);
  CHECK(e[0].carrier == 50);
  CHECK(e[1].carrier == 2);
  CHECK(e[2].carrier == 8);
  CHECK_NOTHROW(bank.fold(e, *s));
}

TEST_CASE("footprint is ordered by threshold, time and cell") {
  const auto s = scenario();
  ReceiverBank bank({2, 1}, 0, 1.0);
  const std::vector<AssimilationEvent> events{{1, 1, 30, 0}, {1, 2, 20, 0}, {2, 3, 20, 0},
                                              {4, 4, 10, 0}, {5, 5, 30, 0}};
  bank.fold(events, *s);
  const auto fp = bank.footprint();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> got;
  for (const auto& r : fp) got.emplace_back(r.threshold, r.cell);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> want{{2, 20}, {2, 30}, {1, 20}, {1, 30}, {1, 10}};
  CHECK(got == want);
}

TEST_CASE("activated counts are monotone in time and in S") {
  const auto s = scenario();
  const std::vector<std::uint32_t> thresholds{1, 2, 5, 10};
  ReceiverBank bank(thresholds, 0, 5e-6);
  // Deterministic pseudo-random stream of events over a handful of cells.
  std::uint64_t x = 12345;
  std::vector<std::uint64_t> prev(thresholds.size(), 0);
  ObjectId carrier = 0;
  for (StepIndex step = 1; step <= 400; ++step) {
    std::vector<AssimilationEvent> batch;
    for (int k = 0; k < 2; ++k) {
      x = x * 6364136223846793005ULL + 1442695040888963407ULL;
      batch.push_back({step, carrier++, static_cast<std::uint32_t>((x >> 33) % 40), 0});
    }
    bank.fold(batch, *s);
    const auto& now = bank.activated();
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      CHECK(now[k] >= prev[k]);
      if (k > 0) CHECK(now[k] <= now[k - 1]);
    }
    prev = now;
  }
  CHECK(bank.total_assimilated() == 800);
  for (const auto& r : bank.footprint()) CHECK(r.t_activation >= 0.0);
}

TEST_CASE("restore reproduces activated counts") {
  const auto s = scenario();
  ReceiverBank a({1, 3}, 0, 5e-6);
  const std::vector<AssimilationEvent> events{{1, 1, 5, 0}, {2, 2, 5, 0}, {3, 3, 5, 0}, {3, 4, 6, 0}};
  a.fold(events, *s);
  ReceiverBank b({1, 3}, 0, 5e-6);
  b.restore(a.states(), a.total_assimilated());
  CHECK(b.activated() == a.activated());
  CHECK(b.total_assimilated() == 4);
  ReceiverBank c({1}, 0, 5e-6);
  CHECK_THROWS_AS(c.restore(a.states(), 4), Error);
}
