#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "vesselsim/core/vec3.hpp"
#include "vesselsim/vessel/endothelium.hpp"

namespace vesselsim::vessel {

/// Receptor on a cube's inner face: tangential offset s (along the cube's o
/// axis) and axial offset a (along d), both measured from the face center.
struct FaceReceptor {
  std::uint32_t id = 0;
  double s = 0.0;
  double a = 0.0;
};

/// Uniform placement over the inner face, a pure function of (seed, cell index).
std::vector<FaceReceptor> scatter_receptors(std::uint32_t cell_index, std::uint32_t count, double side,
                                            std::uint64_t seed);

struct ReceptorProjection {
  bool kept = false;
  double radial_length = 0.0;  ///< |V_R2_NEW| = R / cos(alpha)
  double axial_offset = 0.0;   ///< |P| with sign, axial distance of the projection from the cube center
  double phi_offset = 0.0;     ///< angle of the projection about the axis relative to the cube center
  Vec3 position{};             ///< world position on the vessel wall (meaningful when kept)
};

/// Projects a face receptor onto the vessel wall along the ray from the axis
/// point level with the cube center. The ray leaves the axis at elevation alpha
/// with tan(alpha) = a / rho, rho = sqrt(apothem^2 + s^2); it meets the wall at
/// length R / cos(alpha), axial offset P = a R / rho. Receptors with
/// |P| >= side/2 or whose projection leaves the cube are removed.
ReceptorProjection project_receptor(const FaceReceptor& r, const EndothelialCell& cell, const EndotheliumPlan& plan,
                                    double vessel_radius);

/// Projected receptors of one cell, bucketed on a (arc, axial) grid for fast
/// nearest-receptor queries around an impact point.
class ReceptorField {
 public:
  struct Entry {
    std::uint32_t id = 0;
    double phi = 0.0;  ///< relative to the cell's center angle
    double z = 0.0;    ///< relative to the cell's axial center
  };

  ReceptorField() = default;
  ReceptorField(std::vector<Entry> receptors, double side, double vessel_radius, double bucket = 0.5e-6);

  /// Nearest receptor whose center lies within `reach` (chord distance) of the
  /// wall point at relative (phi, z). Ties go to the lower id.
  std::optional<std::uint32_t> nearest_within(double phi, double z, double reach) const;

  std::size_t size() const noexcept { return entries_.size(); }
  const std::vector<Entry>& entries() const noexcept { return entries_; }

 private:
  std::vector<Entry> entries_;
  std::vector<std::uint32_t> bucket_start_;
  std::vector<std::uint32_t> bucket_items_;
  double radius_ = 0.0;
  double half_ = 0.0;
  double bucket_ = 1.0;
  std::uint32_t cols_ = 0;
  std::uint32_t rows_ = 0;

  std::int64_t col_of(double arc) const noexcept;
  std::int64_t row_of(double z) const noexcept;
};

/// Chord distance between two points of a cylinder of radius R given their
/// angular and axial separations.
double wall_chord(double radius, double dphi, double dz) noexcept;

/// Receptor directions on a spherical cell, a pure function of (seed, stream id).
std::vector<Vec3> sphere_receptor_directions(std::uint64_t seed, std::uint64_t stream, std::uint32_t count);

/// Nearest receptor on a spherical cell within `reach` of the surface point in
/// direction `dir` (unit). Ties go to the lower index.
std::optional<std::uint32_t> nearest_sphere_receptor(const std::vector<Vec3>& directions, double cell_radius,
                                                     const Vec3& dir, double reach);

}  // namespace vesselsim::vessel
