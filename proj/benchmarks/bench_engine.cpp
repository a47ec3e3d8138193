#include <memory>

#include <benchmark/benchmark.h>

#include "vesselsim/core/bytes.hpp"
#include "vesselsim/engine/simulation.hpp"
#include "vesselsim/gridsim/grid_set.hpp"
#include "vesselsim/gridsim/wire.hpp"

using namespace vesselsim;

namespace {

vessel::ScenarioParams downscaled() {
  vessel::ScenarioParams p;
  p.vessel_length = 600e-6;
  p.lead_in = 100e-6;
  p.transmitter_offset = 100e-6;
  for (Kind k : {Kind::Platelet, Kind::RedCell, Kind::WhiteCell}) p.kind(k).concentration *= 0.1;
  p.emit_step = 0;
  return p;
}

// Steps of the downscaled vessel after the burst, for a partition layout.
void BM_Step(benchmark::State& state) {
  const auto nx = static_cast<std::uint32_t>(state.range(0));
  const auto ny = static_cast<std::uint32_t>(state.range(1));
  const bool wire = state.range(2) != 0;
  const auto s = vessel::Scenario::build(downscaled());
  const auto topo = engine::vessel_topology(*s, nx, ny, 1);
  std::unique_ptr<engine::PartitionSet> set;
  if (wire) {
    set = std::make_unique<grid::GridPartitionSet>(*s, topo, grid::local_endpoints(topo.size()));
  } else {
    set = std::make_unique<engine::LocalPartitionSet>(s, topo, 1);
  }
  engine::Simulation sim(s, std::move(set));
  sim.populate();
  sim.step();
  for (auto _ : state) benchmark::DoNotOptimize(sim.step());
  state.counters["objects"] = static_cast<double>(sim.objects().size());
}
BENCHMARK(BM_Step)
    ->ArgNames({"nx", "ny", "wire"})
    ->Args({1, 1, 0})
    ->Args({2, 1, 0})
    ->Args({2, 2, 0})
    ->Args({2, 2, 1})
    ->Unit(benchmark::kMillisecond);

void BM_EnvelopeRoundTrip(benchmark::State& state) {
  const auto s = vessel::Scenario::build(downscaled());
  std::vector<engine::ObjectEnvelope> es(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < es.size(); ++i) es[i].object = s->make_object(i, Kind::RedCell, {0, 0, 1e-6 * i});
  for (auto _ : state) {
    auto w = grid::payload_writer();
    grid::write_envelopes(w, es);
    const grid::Frame f = grid::decode_frame(grid::encode_frame({grid::MessageType::Envelope, w.take()}));
    auto r = grid::payload_reader(f);
    benchmark::DoNotOptimize(grid::read_envelopes(r));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnvelopeRoundTrip)->Arg(100)->Arg(10000);

}  // namespace

BENCHMARK_MAIN();
