#pragma once

#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/vessel/scenario.hpp"

namespace vesselsim::engine {

/// Effect of one pair contact on one of its objects.
struct PairEffect {
  Vec3 displacement{};
  Vec3 velocity_change{};
  bool absorbed = false;  ///< carrier taken up by a receptor of the partner cell
  bool contact = false;
};

struct PairOutcome {
  PairEffect first;   ///< lower id
  PairEffect second;  ///< higher id
};

/// Resolves one overlapping pair from the two post-wall states alone, so the
/// result does not depend on any other pair or on who computes it.
///
/// A carrier touching a cell with receptors is absorbed when the contact point
/// lies within reach of a receptor. Otherwise the spheres are separated along
/// the line of centers by overlap/2 + epsilon each, and when approaching their
/// normal velocities are exchanged with the cell restitution coefficient; the
/// velocity change is replayed over the part of the step after contact.
/// Fixed objects act as infinitely heavy. `a.id < b.id` is required.
PairOutcome resolve_pair(const NanoObject& a, const NanoObject& b, const vessel::Scenario& scenario, double dt);

}  // namespace vesselsim::engine
