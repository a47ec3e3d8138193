#include <cmath>

#include "doctest.h"
#include "vesselsim/core/physics.hpp"
#include "vesselsim/motion/motion.hpp"

using namespace vesselsim;
using namespace vesselsim::motion;
using doctest::Approx;

namespace {
FlowProfile reference_flow() { return {0.5e-3, 30e-6, Frame::identity()}; }
}  // namespace

TEST_CASE("poiseuille profile values") {
  const auto f = reference_flow();
  CHECK(poiseuille_velocity(0.0, f) == Approx(1.0e-3));
  CHECK(poiseuille_velocity(30e-6, f) == Approx(0.0));
  CHECK(poiseuille_velocity(15e-6, f) == Approx(0.75e-3));
  bool clamped = false;
  CHECK(poiseuille_velocity(31e-6, f, &clamped) == 0.0);
  CHECK(clamped);
  const Vec3 v = drift_velocity({0.0, 15e-6, 7e-6}, f);
  CHECK(v.x == 0.0);
  CHECK(v.y == 0.0);
  CHECK(v.z == Approx(0.75e-3));
}

TEST_CASE("brownian displacement statistics") {
  const double D = diffusion_coefficient(1.75e-9, 310.0, 0.0013);
  const double dt = 5e-6;
  const double sigma = std::sqrt(2.0 * D * dt);
  CHECK(sigma == Approx(3.1592e-8).epsilon(1e-4));
  double sum = 0.0, sum2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const Vec3 d = brownian_displacement(D, dt, {3, make_stream(StreamTag::Object, i % 100)}, i / 100);
    sum += d.x + d.y + d.z;
    sum2 += norm2(d);
  }
  CHECK(std::abs(sum / (3.0 * n)) < 4.0 * sigma / std::sqrt(3.0 * n));
  CHECK(sum2 / (3.0 * n) == Approx(sigma * sigma).epsilon(0.01));
  CHECK(brownian_displacement(0.0, dt, {1, 1}, 1) == Vec3{});
}

TEST_CASE("advance by mobility") {
  const auto f = reference_flow();
  NanoObject o;
  o.center = {0.0, 0.0, 1e-6};
  o.velocity = {1e-3, 0.0, 0.0};
  o.rng_stream = make_stream(StreamTag::Object, 9);

  o.mobility = Mobility::Fixed;
  CHECK(advance(o, f, 1e-10, 5e-6, 1, 0).center == o.center);

  o.mobility = Mobility::Ballistic;
  const auto b = advance(o, f, 1e-10, 5e-6, 1, 0);
  CHECK(b.center.x == Approx(5e-9));
  CHECK(b.velocity == o.velocity);

  o.mobility = Mobility::Advected;
  const auto a = advance(o, f, 0.0, 5e-6, 1, 0);
  CHECK(a.center.z - o.center.z == Approx(1e-3 * 5e-6));
  CHECK(a.velocity.z == Approx(1e-3));
  // Same (seed, object, step) gives the same draw.
  CHECK(advance(o, f, 1e-10, 5e-6, 1, 4).center == advance(o, f, 1e-10, 5e-6, 1, 4).center);
  CHECK(advance(o, f, 1e-10, 5e-6, 1, 4).center != advance(o, f, 1e-10, 5e-6, 1, 5).center);
}

TEST_CASE("free diffusion mean squared displacement") {
  const double D = 1e-10, dt = 5e-6;
  const FlowProfile still{0.0, 1.0, Frame::identity()};
  const int walkers = 2000, steps = 200;
  double msd = 0.0;
  for (int w = 0; w < walkers; ++w) {
    NanoObject o;
    o.rng_stream = make_stream(StreamTag::Object, w);
    for (int s = 0; s < steps; ++s) o.center = advance(o, still, D, dt, 11, s).center;
    msd += norm2(o.center);
  }
  msd /= walkers;
  CHECK(msd == Approx(6.0 * D * dt * steps).epsilon(0.05));
}
