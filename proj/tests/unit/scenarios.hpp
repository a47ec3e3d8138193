#pragma once

#include "vesselsim/vessel/params.hpp"

namespace vesselsim::testing {

/// Short vessel at a tenth of the reference concentrations.
inline vessel::ScenarioParams small_vessel(double length = 300e-6) {
  vessel::ScenarioParams p;
  p.vessel_length = length;
  p.lead_in = 50e-6;
  p.transmitter_offset = 50e-6;
  for (Kind k : {Kind::Platelet, Kind::RedCell, Kind::WhiteCell}) p.kind(k).concentration *= 0.1;
  p.burst_size = 500;
  p.emit_step = 5;
  p.steps = 100;
  return p;
}

/// No blood, no transmitter: only probes move.
inline vessel::ScenarioParams empty_vessel() {
  auto p = small_vessel();
  p.seed_blood = false;
  p.continuous_creation = false;
  p.transmitter = false;
  return p;
}

}  // namespace vesselsim::testing
