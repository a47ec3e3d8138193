#include "vesselsim/vessel/receptors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vesselsim/core/rng.hpp"

namespace vesselsim::vessel {

namespace {
// Distances at the reach boundary are compared with a relative slack so that a
// receptor exactly at r_receptor + r_carrier is not lost to rounding.
constexpr double kReachSlack = 1e-9;
}  // namespace

std::vector<FaceReceptor> scatter_receptors(std::uint32_t cell_index, std::uint32_t count, double side,
                                            std::uint64_t seed) {
  std::vector<FaceReceptor> out;
  out.reserve(count);
  const RngKey key{seed, make_stream(StreamTag::Receptors, cell_index)};
  for (std::uint32_t i = 0; i < count; ++i) {
    out.push_back({i, (draw_uniform(key, i, 0) - 0.5) * side, (draw_uniform(key, i, 1) - 0.5) * side});
  }
  return out;
}

ReceptorProjection project_receptor(const FaceReceptor& r, const EndothelialCell& cell, const EndotheliumPlan& plan,
                                    double vessel_radius) {
  ReceptorProjection p;
  const double rho = std::hypot(plan.apothem, r.s);
  const double scale = vessel_radius / rho;
  p.radial_length = std::hypot(rho, r.a) * scale;
  p.axial_offset = r.a * scale;
  p.phi_offset = std::atan2(r.s, plan.apothem);
  // Inside the cube's inner face plane iff R cos(phi_offset) >= apothem, i.e. rho <= R.
  p.kept = std::abs(p.axial_offset) < 0.5 * plan.side && rho <= vessel_radius;
  // Cell frame origin is the cube center; its d axis is the vessel axis.
  const Vec3 axis_point = cell.frame.origin - cell.frame.n * plan.center_distance;
  const Vec3 radial = cell.frame.n * std::cos(p.phi_offset) + cell.frame.o * std::sin(p.phi_offset);
  p.position = axis_point + radial * vessel_radius + cell.frame.d * p.axial_offset;
  return p;
}

double wall_chord(double radius, double dphi, double dz) noexcept {
  const double arc_chord = 2.0 * radius * std::sin(0.5 * dphi);
  return std::hypot(arc_chord, dz);
}

ReceptorField::ReceptorField(std::vector<Entry> receptors, double side, double vessel_radius, double bucket)
    : entries_(std::move(receptors)), radius_(vessel_radius), half_(0.5 * side), bucket_(bucket) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) { return a.id < b.id; });
  // Arc coordinates of kept receptors stay within R * atan(side/2 / apothem) < side/2 * R / apothem;
  // pad by one bucket on each side.
  const double span = 2.0 * half_ * 1.2 + 2.0 * bucket_;
  cols_ = static_cast<std::uint32_t>(std::ceil(span / bucket_));
  rows_ = static_cast<std::uint32_t>(std::ceil((2.0 * half_ + 2.0 * bucket_) / bucket_));
  std::vector<std::uint32_t> counts(std::size_t{cols_} * rows_ + 1, 0);
  auto cell_of = [&](const Entry& e) {
    const auto c = std::clamp<std::int64_t>(col_of(radius_ * e.phi), 0, cols_ - 1);
    const auto r = std::clamp<std::int64_t>(row_of(e.z), 0, rows_ - 1);
    return static_cast<std::size_t>(r * cols_ + c);
  };
  for (const auto& e : entries_) ++counts[cell_of(e) + 1];
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  bucket_start_ = counts;
  bucket_items_.resize(entries_.size());
  std::vector<std::uint32_t> fill(counts.begin(), counts.end() - 1);
  for (std::uint32_t i = 0; i < entries_.size(); ++i) bucket_items_[fill[cell_of(entries_[i])]++] = i;
}

std::int64_t ReceptorField::col_of(double arc) const noexcept {
  const double origin = -0.5 * cols_ * bucket_;
  return static_cast<std::int64_t>(std::floor((arc - origin) / bucket_));
}

std::int64_t ReceptorField::row_of(double z) const noexcept {
  const double origin = -0.5 * rows_ * bucket_;
  return static_cast<std::int64_t>(std::floor((z - origin) / bucket_));
}

std::optional<std::uint32_t> ReceptorField::nearest_within(double phi, double z, double reach) const {
  if (entries_.empty()) return std::nullopt;
  const double arc = radius_ * phi;
  const auto c0 = std::max<std::int64_t>(0, col_of(arc - reach));
  const auto c1 = std::min<std::int64_t>(cols_ - 1, col_of(arc + reach));
  const auto r0 = std::max<std::int64_t>(0, row_of(z - reach));
  const auto r1 = std::min<std::int64_t>(rows_ - 1, row_of(z + reach));
  const double limit = reach * (1.0 + kReachSlack);
  std::optional<std::uint32_t> best;
  double best_d = 0.0;
  for (auto r = r0; r <= r1; ++r) {
    for (auto c = c0; c <= c1; ++c) {
      const std::size_t b = static_cast<std::size_t>(r * cols_ + c);
      for (std::uint32_t k = bucket_start_[b]; k < bucket_start_[b + 1]; ++k) {
        const Entry& e = entries_[bucket_items_[k]];
        const double d = wall_chord(radius_, phi - e.phi, z - e.z);
        if (d > limit) continue;
        if (!best || d < best_d || (d == best_d && e.id < *best)) {
          best = e.id;
          best_d = d;
        }
      }
    }
  }
  return best;
}

std::vector<Vec3> sphere_receptor_directions(std::uint64_t seed, std::uint64_t stream, std::uint32_t count) {
  std::vector<Vec3> out;
  out.reserve(count);
  const RngKey key{seed, stream};
  for (std::uint32_t i = 0; i < count; ++i) {
    const double u = 2.0 * draw_uniform(key, i, 0) - 1.0;
    const double phi = 2.0 * std::numbers::pi * draw_uniform(key, i, 1);
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    out.push_back({s * std::cos(phi), s * std::sin(phi), u});
  }
  return out;
}

std::optional<std::uint32_t> nearest_sphere_receptor(const std::vector<Vec3>& directions, double cell_radius,
                                                     const Vec3& dir, double reach) {
  const double limit = reach * (1.0 + kReachSlack);
  std::optional<std::uint32_t> best;
  double best_d = 0.0;
  for (std::uint32_t i = 0; i < directions.size(); ++i) {
    const double d = cell_radius * norm(directions[i] - dir);
    if (d > limit) continue;
    if (!best || d < best_d) {
      best = i;
      best_d = d;
    }
  }
  return best;
}

}  // namespace vesselsim::vessel
