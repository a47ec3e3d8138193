#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vesselsim/collision/broad_phase.hpp"
#include "vesselsim/collision/cylinder.hpp"
#include "vesselsim/collision/two_body.hpp"
#include "vesselsim/core/error.hpp"
#include "vesselsim/core/rng.hpp"
#include "vesselsim/core/thread_pool.hpp"

using namespace vesselsim;
using namespace vesselsim::collision;
using doctest::Approx;

namespace {
double uni(std::uint64_t i, std::uint32_t slot, std::uint64_t seed = 5) {
  return draw_uniform({seed, make_stream(StreamTag::Test, 21)}, i, slot);
}

std::vector<SphereRef> random_spheres(std::uint64_t trial, std::size_t n, double box, double rmax) {
  std::vector<SphereRef> s(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t i = trial * 1000 + k;
    // Shuffled ids so that id order differs from position order.
    s[k].id = (k * 7919) % 100003 + 1;
    s[k].center = {uni(i, 0) * box, uni(i, 1) * box, uni(i, 2) * box};
    s[k].radius = 0.05 + uni(i, 3) * rmax;
  }
  return s;
}
}  // namespace

TEST_CASE("broad phase collinear example") {
  const std::vector<SphereRef> s{{1, {0, 0, 0}, 1.0}, {2, {1.5, 0, 0}, 1.0}, {3, {10, 0, 0}, 1.0}};
  const auto pairs = overlapping_pairs(s, {0, 0, 0});
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == CandidatePair{1, 2});
  CHECK(broad_phase(std::span<const SphereRef>(s.data(), 1), {}).empty());
}

TEST_CASE("broad phase equals the all-pairs oracle") {
  ThreadPool pool(2);
  for (std::uint64_t trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(uni(trial, 9, 77) * 300);
    const auto s = random_spheres(trial, n, 20.0, 1.0);
    const Vec3 ref{uni(trial, 10, 77) * 20, 10, 10};
    const auto expect = overlapping_pairs_brute_force(s);
    REQUIRE(overlapping_pairs(s, ref) == expect);
    REQUIRE(overlapping_pairs(s, ref, nullptr, &pool) == expect);
    // Broad phase output must also be a superset.
    const auto candidates = broad_phase(s, ref);
    for (const auto& p : expect) REQUIRE(std::binary_search(candidates.begin(), candidates.end(), p));
  }
}

TEST_CASE("broad phase keeps tangent pairs") {
  // Exactly tangent spheres at awkward coordinates.
  std::vector<SphereRef> s;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const Vec3 c{uni(i, 0) * 1e-4, uni(i, 1) * 1e-4, uni(i, 2) * 1e-4};
    s.push_back({2 * i + 1, c, 1.75e-9});
    s.push_back({2 * i + 2, c + Vec3{3.5e-9, 0, 0}, 1.75e-9});
  }
  REQUIRE(overlapping_pairs(s, {}) == overlapping_pairs_brute_force(s));
}

TEST_CASE("sphere sphere test") {
  CHECK(sphere_sphere_test({0, 0, 0}, 1, {2, 0, 0}, 1));
  CHECK_FALSE(sphere_sphere_test({0, 0, 0}, 1, {2.0001, 0, 0}, 1));
  CHECK(sphere_sphere_test({1, 1, 1}, 1, {1, 1, 1}, 0.5));
}

TEST_CASE("cylinder hit test") {
  const domains::Cylinder cyl{30e-6, 2600e-6};
  const Frame f = Frame::identity();
  auto h = cylinder_hit_test({28.5e-6, 0, 0}, 2e-6, cyl, f);
  CHECK(h.side);
  CHECK_FALSE(h.top_or_bottom());
  h = cylinder_hit_test({0, 0, 1299e-6}, 2e-6, cyl, f);
  CHECK(h.top);
  CHECK_FALSE(h.side);
  h = cylinder_hit_test({0, 0, -1299e-6}, 2e-6, cyl, f);
  CHECK(h.bottom);
  CHECK_FALSE(cylinder_hit_test({}, 1e-6, cyl, f).any());
  h = cylinder_hit_test({0, 29e-6, 1299.5e-6}, 1e-6, cyl, f);
  CHECK(h.side);
  CHECK(h.top);
}

TEST_CASE("backtrack impact on the side wall") {
  const domains::Cylinder cyl{30.0, 100.0};
  const Frame f = Frame::identity();
  auto hit = backtrack_impact({27, 0, 0}, {31, 0, 0}, 1.0, Surface::Side, cyl, f);
  CHECK(hit.impact_fraction == Approx(0.5));
  CHECK(hit.impact_point.x == Approx(30.0));
  CHECK(hit.contact_center.x == Approx(29.0));

  hit = backtrack_impact({27, 0, 0}, {29, 0, 0}, 1.0, Surface::Side, cyl, f);
  CHECK(hit.impact_fraction == Approx(1.0));

  hit = backtrack_impact({29, 0, 0}, {30, 0, 0}, 1.0, Surface::Side, cyl, f);
  CHECK(hit.impact_fraction == 0.0);

  // Oblique approach: impact point lies on the surface.
  hit = backtrack_impact({0, 20, 5}, {25, 20, 9}, 2.0, Surface::Side, cyl, f);
  const auto c = to_cylindrical(hit.impact_point, f);
  CHECK(c.r == Approx(30.0).epsilon(1e-12));
  CHECK(norm(hit.contact_center - hit.impact_point) == Approx(2.0).epsilon(1e-12));
}

TEST_CASE("backtrack impact on flat faces") {
  const domains::Cylinder cyl{30.0, 100.0};
  const Frame f = Frame::identity();
  auto hit = backtrack_impact({0, 0, 45}, {0, 0, 51}, 2.0, Surface::Top, cyl, f);
  CHECK(hit.impact_fraction == Approx(0.5));
  CHECK(hit.impact_point.z == Approx(50.0));
  hit = backtrack_impact({1, 2, -45}, {1, 2, -53}, 1.0, Surface::Bottom, cyl, f);
  CHECK(hit.impact_fraction == Approx(0.5));
  CHECK(hit.normal == Vec3{0, 0, -1});
}

TEST_CASE("flat bounce") {
  const Frame f = Frame::identity();
  // Components are (n, o, d).
  auto v = bounce_flat(FrameComponents{2, 1, 5}, 1.0);
  CHECK(v == FrameComponents{2, 1, -5});
  v = bounce_flat(FrameComponents{2, 1, 5}, 0.6);
  CHECK(v.d == Approx(-3.0));
  CHECK(v.n == 2.0);
  CHECK(v.o == 1.0);
  const Vec3 w = bounce_flat(Vec3{3, 4, 7}, f, 0.0);
  CHECK(w == Vec3{3, 4, 0});
  CHECK_THROWS_AS(bounce_flat(FrameComponents{1, 1, 1}, 1.1), Error);
  CHECK_THROWS_AS(bounce_flat(FrameComponents{1, 1, 1}, -0.1), Error);
}

TEST_CASE("side bounce") {
  auto v = bounce_side(FrameComponents{2, 1, 5}, 0.6);
  CHECK(v.n == Approx(-1.2));
  CHECK(v.o == 1.0);
  CHECK(v.d == 5.0);
  CHECK(bounce_side(FrameComponents{0, 3, 4}, 0.6) == FrameComponents{0, 3, 4});
  CHECK(bounce_side(FrameComponents{7, 0, 0}, 1.0) == FrameComponents{-7, 0, 0});
  CHECK_THROWS_AS(bounce_side(FrameComponents{1, 1, 1}, 2.0), Error);
}

TEST_CASE("side wall resolution keeps the sphere inside") {
  const domains::Cylinder cyl{30e-6, 1e-3};
  const Frame f = Frame::from_axis({1e-6, 2e-6, 3e-6}, {0.1, 0.2, 1.0});
  const double dt = 5e-6;
  for (std::uint64_t i = 0; i < 20000; ++i) {
    const double r = 1e-9 + uni(i, 0) * 5e-6;
    const double rho0 = uni(i, 1) * (cyl.radius - r);
    const double phi = uni(i, 2) * 2 * std::numbers::pi;
    const Vec3 start = f.to_world({rho0 * std::cos(phi), rho0 * std::sin(phi), 0});
    const Vec3 v = f.from_components({(uni(i, 3) - 0.5) * 40, (uni(i, 4) - 0.5) * 40, (uni(i, 5) - 0.5) * 10});
    const MovingSphere s{start, start + v * dt, v, r};
    const auto res = resolve_side_wall(s, cyl, f, uni(i, 6), dt, nullptr);
    const auto c = f.components(res.end - f.origin);
    REQUIRE(std::hypot(c.n, c.o) + r <= cyl.radius + 1e-9);
    REQUIRE(is_finite(res.velocity));
  }
}

TEST_CASE("clamping survives a distant frame origin") {
  const domains::Cylinder cyl{2e-6, 1.0};
  const Frame f = Frame::from_axis({0.7, -1.3, 0.4}, {0.3, -0.5, 1.0});
  for (std::uint64_t i = 0; i < 2000; ++i) {
    const double r = uni(i, 0) * 0.6e-6;
    const double phi = uni(i, 1) * 2 * std::numbers::pi;
    const double rho = (cyl.radius - r) * (1.0 + uni(i, 2));
    const Vec3 out = clamp_inside_side(f.to_world({rho * std::cos(phi), rho * std::sin(phi), 0}), r, cyl, f);
    REQUIRE_FALSE(cylinder_hit_test(out, r, cyl, f).side);
  }
}

TEST_CASE("side wall resolution reflects the normal component") {
  const domains::Cylinder cyl{30.0, 1000.0};
  const Frame f = Frame::identity();
  const MovingSphere s{{27, 0, 0}, {31, 0, 2}, {4, 0, 2}, 1.0};
  const auto res = resolve_side_wall(s, cyl, f, 0.6, 1.0, nullptr);
  CHECK(res.contacts == 1);
  CHECK(res.velocity.x == Approx(-2.4));
  CHECK(res.velocity.z == 2.0);
  CHECK(res.end.x == Approx(29.0 - 2.4 * 0.5));
  CHECK(res.end.z == Approx(1.0 + 1.0));
  CHECK_FALSE(res.clamped);
}

TEST_CASE("side wall absorption stops at the contact") {
  const domains::Cylinder cyl{30.0, 1000.0};
  const MovingSphere s{{27, 0, 0}, {31, 0, 0}, {4, 0, 0}, 1.0};
  const auto res = resolve_side_wall(s, cyl, Frame::identity(), 0.6, 1.0,
                                     [](const WallHit&) { return ContactAction::Absorb; });
  CHECK(res.absorbed);
  REQUIRE(res.absorbing_hit.has_value());
  CHECK(res.absorbing_hit->impact_point.x == Approx(30.0));
}

TEST_CASE("two body head-on swap") {
  const auto r = resolve_two_body({1, 0, 0}, {-1, 0, 0}, 2.0, 2.0, 1.0, {1, 0, 0});
  CHECK(r.v1.x == Approx(-1.0));
  CHECK(r.v2.x == Approx(1.0));
}

TEST_CASE("two body completely inelastic") {
  const auto r = resolve_two_body({3, 1, 0}, {-1, 0, 2}, 1.0, 5.0, 0.0, {1, 0, 0});
  CHECK(r.v1.x == Approx(r.v2.x));
  CHECK(r.v1.y == 1.0);
  CHECK(r.v2.z == 2.0);
}

TEST_CASE("two body wall limit") {
  const Vec3 v1{2.0, 0.5, -0.25};
  for (double e : {0.0, 0.3, 0.6, 1.0}) {
    const auto r = resolve_two_body(v1, {}, 1.0, 1e12, e, {1, 0, 0});
    CHECK(r.v1.x == Approx(-e * v1.x).epsilon(1e-9));
    CHECK(r.v1.y == v1.y);
  }
}

TEST_CASE("two body rejects bad input") {
  CHECK_THROWS_AS(resolve_two_body({1, 0, 0}, {}, 1, 1, 0.5, {}), Error);
  CHECK_THROWS_AS(resolve_two_body({1, 0, 0}, {}, 0, 1, 0.5, {1, 0, 0}), Error);
  CHECK_THROWS_AS(resolve_two_body({1, 0, 0}, {}, 1, 1, 1.5, {1, 0, 0}), Error);
}

TEST_CASE("two body momentum and energy laws") {
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const double m1 = std::exp((uni(i, 0) - 0.5) * 20), m2 = std::exp((uni(i, 1) - 0.5) * 20);
    const Vec3 v1{uni(i, 2) - 0.5, uni(i, 3) - 0.5, uni(i, 4) - 0.5};
    const Vec3 v2{uni(i, 5) - 0.5, uni(i, 6) - 0.5, uni(i, 7) - 0.5};
    const Vec3 n{uni(i, 8) - 0.5, uni(i, 9) - 0.5, uni(i, 10) - 0.5};
    const double e = uni(i, 11);
    const auto r = resolve_two_body(v1, v2, m1, m2, e, n);
    const Vec3 p0 = v1 * m1 + v2 * m2;
    const Vec3 p1 = r.v1 * m1 + r.v2 * m2;
    const double scale = norm(v1) * m1 + norm(v2) * m2;
    REQUIRE(norm(p1 - p0) <= 1e-12 * scale);
    const double ratio = cm_kinetic_energy_ratio(v1, v2, r.v1, r.v2, m1, m2, n);
    REQUIRE(ratio == Approx(e * e).epsilon(1e-10));
    // Tangential parts are untouched.
    const Vec3 u = normalized(n);
    REQUIRE(norm((r.v1 - u * dot(r.v1, u)) - (v1 - u * dot(v1, u))) <= 1e-15);
  }
  CHECK(cm_kinetic_energy_ratio({1, 0, 0}, {-1, 0, 0}, {-0.6, 0, 0}, {0.6, 0, 0}, 1, 1, {1, 0, 0}) ==
        Approx(0.36));
}

TEST_CASE("separation pushes overlapping spheres apart") {
  const auto [d1, d2] = separation_displacements({0, 0, 0}, 1.0, {1.5, 0, 0}, 1.0);
  CHECK(d1.x == Approx(-0.25));
  CHECK(d2.x == Approx(0.25));
  const auto [a, b] = separation_displacements({0, 0, 0}, 1.0, {3, 0, 0}, 1.0);
  CHECK(a == Vec3{});
  CHECK(b == Vec3{});
}

TEST_CASE("pair contact fraction") {
  CHECK(pair_contact_fraction({0, 0, 0}, {0, 0, 0}, {4, 0, 0}, {0, 0, 0}, 2.0) == Approx(0.5));
  CHECK(pair_contact_fraction({0, 0, 0}, {0, 0, 0}, {1, 0, 0}, {0, 0, 0}, 2.0) == 0.0);
  CHECK(pair_contact_fraction({0, 0, 0}, {0, 0, 0}, {4, 0, 0}, {8, 0, 0}, 2.0) == 1.0);
}
