#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "vesselsim/core/error.hpp"
#include "vesselsim/core/nano_object.hpp"
#include "vesselsim/core/physics.hpp"
#include "vesselsim/core/rng.hpp"
#include "vesselsim/core/thread_pool.hpp"
#include "vesselsim/core/vec3.hpp"

using namespace vesselsim;
using doctest::Approx;

namespace {
constexpr double kB = 1.380649e-23;
constexpr double kPi = 3.14159265358979323846;

double stokes_einstein_oracle(double r, double t, double eta) { return kB * t / (6.0 * kPi * eta * r); }
}  // namespace

TEST_CASE("diffusion coefficient matches Stokes-Einstein") {
  const double carrier = diffusion_coefficient(1.75e-9, 310.0, 0.0013);
  CHECK(carrier == Approx(stokes_einstein_oracle(1.75e-9, 310.0, 0.0013)).epsilon(1e-14));
  CHECK(carrier == Approx(9.98e-11).epsilon(1e-3));

  const double platelet = diffusion_coefficient(1e-6, 310.0, 0.0013);
  CHECK(platelet == Approx(1.75e-13).epsilon(3e-3));
  CHECK(carrier / platelet == Approx(1e-6 / 1.75e-9).epsilon(1e-12));

  CHECK(diffusion_coefficient(2e-6, 310.0, 0.0013) == diffusion_coefficient(1e-6, 310.0, 0.0013) / 2.0);
  CHECK(diffusion_coefficient(3e-9, 300.0, 0.002) < diffusion_coefficient(2e-9, 300.0, 0.002));
  CHECK(diffusion_coefficient(2e-9, 300.0, 0.003) < diffusion_coefficient(2e-9, 300.0, 0.002));
}

TEST_CASE("diffusion coefficient rejects non-positive inputs") {
  CHECK_THROWS_AS(diffusion_coefficient(0.0, 310.0, 0.0013), Error);
  CHECK_THROWS_AS(diffusion_coefficient(1e-9, -1.0, 0.0013), Error);
  CHECK_THROWS_AS(diffusion_coefficient(1e-9, 310.0, 0.0), Error);
  try {
    diffusion_coefficient(-1.0, 310.0, 0.0013);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidParameter);
  }
}

TEST_CASE("mass of sphere") {
  CHECK(mass_of(3.5e-6, 1000.0) / mass_of(1e-6, 1000.0) == Approx(42.875).epsilon(1e-12));
  CHECK(mass_of(2e-6, 1000.0) == mass_of(2e-6, 1000.0));
  CHECK(mass_of(1.0, 3.0) == Approx(4.0 * kPi).epsilon(1e-15));
  CHECK_THROWS_AS(mass_of(0.0, 1000.0), Error);
  CHECK_THROWS_AS(mass_of(1e-6, 0.0), Error);
}

TEST_CASE("cylindrical coordinates") {
  const Frame f = Frame::identity();
  const double R = 30e-6;
  auto c = to_cylindrical({0, 0, 5e-6}, f);
  CHECK(c.phi == 0.0);
  CHECK(c.r == 0.0);
  CHECK(c.z == Approx(5e-6));

  c = to_cylindrical(f.n * R, f);
  CHECK(c.phi == Approx(0.0));
  CHECK(c.r == Approx(R));
  CHECK(c.z == Approx(0.0));

  c = to_cylindrical(f.o * R, f);
  CHECK(c.phi == Approx(std::numbers::pi / 2));
  CHECK(c.r == Approx(R));

  c = to_cylindrical(f.n * -R, f);
  CHECK(c.phi == Approx(std::numbers::pi));
  CHECK(c.phi > 0.0);
}

TEST_CASE("cylindrical round trip in a rotated frame") {
  const Frame f = Frame::from_axis({1e-6, -2e-6, 3e-6}, {0.3, -0.2, 0.9}).rotated_about_d(0.7);
  const RngKey key{17, make_stream(StreamTag::Test, 1)};
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const Vec3 p{(draw_uniform(key, i, 0) - 0.5) * 1e-4, (draw_uniform(key, i, 1) - 0.5) * 1e-4,
                 (draw_uniform(key, i, 2) - 0.5) * 1e-4};
    const Vec3 back = from_cylindrical(to_cylindrical(p, f), f);
    const double scale = std::max(norm(p), norm(f.origin));
    REQUIRE(norm(back - p) <= 1e-12 * scale);
    const auto c = to_cylindrical(p, f);
    REQUIRE(c.phi > -std::numbers::pi);
    REQUIRE(c.phi <= std::numbers::pi);
  }
}

TEST_CASE("frame orthonormality survives rotations") {
  Frame f = Frame::from_axis({}, {1.0, 2.0, 3.0});
  CHECK(f.orthonormality_error() < 1e-12);
  CHECK(norm(cross(f.n, f.o) - f.d) < 1e-12);
  for (int i = 0; i < 1000; ++i) {
    f = f.rotated_about_d(0.1 * i + 0.013);
    f = f.compose(Frame::from_axis({}, {std::sin(i * 0.3), std::cos(i * 0.7), 1.5}));
  }
  CHECK(f.orthonormality_error() < 1e-12);
}

TEST_CASE("philox known answers") {
  auto a = philox4x32({0, 0, 0, 0}, {0, 0});
  CHECK(a[0] == 0x6627e8d5u);
  CHECK(a[1] == 0xe169c58du);
  CHECK(a[2] == 0xbc57ac4cu);
  CHECK(a[3] == 0x9b00dbd8u);
  auto b = philox4x32({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu});
  CHECK(b[0] == 0x408f276du);
  CHECK(b[1] == 0x41c83b0eu);
  CHECK(b[2] == 0xa20bc7c6u);
  CHECK(b[3] == 0x6d5451fdu);
}

TEST_CASE("gaussian draws are pure and standard normal") {
  const RngKey key{42, make_stream(StreamTag::Object, 7)};
  CHECK(draw_gaussian(key, 123, 2) == draw_gaussian(key, 123, 2));
  CHECK(draw_gaussian(key, 123, 2) != draw_gaussian(key, 123, 1));
  CHECK(draw_gaussian(key, 123, 2) != draw_gaussian({43, key.stream}, 123, 2));

  constexpr std::uint64_t n = 1'000'000;
  double sum = 0.0, sum2 = 0.0, lag = 0.0, prev = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) {
    // Walk slots within a step, then steps, the way the motion phase consumes them.
    const double g = draw_gaussian(key, i / 3, static_cast<std::uint32_t>(i % 3));
    sum += g;
    sum2 += g * g;
    if (i > 0) lag += g * prev;
    prev = g;
  }
  const double mean = sum / n;
  const double var = sum2 / n - mean * mean;
  const double rho = (lag / (n - 1) - mean * mean) / var;
  CHECK(std::abs(mean) < 0.01);
  CHECK(std::abs(var - 1.0) < 0.02);
  CHECK(std::abs(rho) < 0.01);
}

TEST_CASE("uniform draws stay inside the open unit interval") {
  const RngKey key{0, 0};
  for (std::uint64_t i = 0; i < 100000; ++i) {
    const double u = draw_uniform(key, i, 0);
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("sim clock") {
  SimClock clock(5e-6);
  CHECK(clock.time() == 0.0);
  for (int i = 0; i < 40000; ++i) clock.advance();
  CHECK(clock.step() == 40000);
  CHECK(clock.time() == 40000 * 5e-6);
  CHECK_THROWS_AS(SimClock(0.0), Error);
  CHECK_THROWS_AS(SimClock(-1.0), Error);
}

TEST_CASE("thread pool runs every task once and rethrows") {
  for (std::size_t workers : {1u, 2u, 4u}) {
    ThreadPool pool(workers);
    std::vector<int> hits(257, 0);
    pool.run(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) REQUIRE(h == 1);
    CHECK_THROWS_AS(pool.run(8, [](std::size_t i) {
      if (i == 5) throw std::runtime_error("boom");
    }),
                    std::runtime_error);
    pool.run(3, [&](std::size_t i) { hits[i] += 1; });
    CHECK(hits[0] == 2);
  }
}
