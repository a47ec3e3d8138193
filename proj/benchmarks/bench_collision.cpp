#include <cmath>
#include <numbers>
#include <vector>

#include <benchmark/benchmark.h>

#include "vesselsim/collision/broad_phase.hpp"
#include "vesselsim/collision/two_body.hpp"
#include "vesselsim/core/rng.hpp"

using namespace vesselsim;

namespace {

// Unit spheres at a 10% volume fraction in a tube of radius 30, as in the vessel.
std::vector<collision::SphereRef> tube(std::size_t n) {
  const double length = static_cast<double>(n) * 4.0 / 3.0 / (0.1 * 900.0);
  RngSequence rng({7, make_stream(StreamTag::Bench, n)});
  std::vector<collision::SphereRef> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = 29.0 * std::sqrt(rng.uniform());
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    out.push_back({i, {r * std::cos(phi), r * std::sin(phi), length * rng.uniform()}, 1.0});
  }
  return out;
}

void BM_BroadPhase(benchmark::State& state) {
  const auto spheres = tube(static_cast<std::size_t>(state.range(0)));
  const double length = spheres.size() * 4.0 / 3.0 / 90.0;
  collision::BroadPhaseStats stats;
  for (auto _ : state) {
    auto pairs = collision::broad_phase(spheres, {0.0, 0.0, -length}, &stats);
    benchmark::DoNotOptimize(pairs.data());
  }
  state.SetComplexityN(state.range(0));
  state.counters["comparisons"] =
      benchmark::Counter(static_cast<double>(stats.total()), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_BroadPhase)->RangeMultiplier(10)->Range(1000, 100000)->Complexity(benchmark::oNLogN)->Unit(benchmark::kMillisecond);

void BM_OverlappingPairs(benchmark::State& state) {
  const auto spheres = tube(static_cast<std::size_t>(state.range(0)));
  const double length = spheres.size() * 4.0 / 3.0 / 90.0;
  for (auto _ : state) {
    auto pairs = collision::overlapping_pairs(spheres, {0.0, 0.0, -length});
    benchmark::DoNotOptimize(pairs.data());
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_OverlappingPairs)->RangeMultiplier(10)->Range(1000, 100000)->Complexity(benchmark::oNLogN)->Unit(benchmark::kMillisecond);

void BM_TwoBody(benchmark::State& state) {
  RngSequence rng({3, make_stream(StreamTag::Bench, 1)});
  const Vec3 v1{rng.gaussian(), rng.gaussian(), rng.gaussian()};
  const Vec3 v2{rng.gaussian(), rng.gaussian(), rng.gaussian()};
  const Vec3 n = normalized(Vec3{1.0, 0.3, -0.2});
  for (auto _ : state) {
    auto r = collision::resolve_two_body(v1, v2, 1.0, 3.0, 0.6, n);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_TwoBody);

}  // namespace

BENCHMARK_MAIN();
