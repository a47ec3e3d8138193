#include "vesselsim/gridsim/topology.hpp"

#include <algorithm>
#include <cmath>

#include "vesselsim/core/error.hpp"

namespace vesselsim::grid {

std::string_view to_string(Face f) noexcept {
  switch (f) {
    case Face::PosX: return "+x";
    case Face::PosY: return "+y";
    case Face::PosZ: return "+z";
    case Face::NegZ: return "-z";
    case Face::NegY: return "-y";
    case Face::NegX: return "-x";
  }
  return "?";
}

double component(const Vec3& v, int axis) noexcept { return axis == 0 ? v.x : axis == 1 ? v.y : v.z; }

Topology::Topology(Box bounds, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz)
    : bounds_(bounds), dims_{nx, ny, nz} {
  if (nx == 0 || ny == 0 || nz == 0) fail(ErrorKind::InvalidParameter, "partition counts must be at least 1");
  const Vec3 size = bounds.size();
  if (!(size.x > 0.0 && size.y > 0.0 && size.z > 0.0)) fail(ErrorKind::InvalidParameter, "empty split volume");
  cell_ = {size.x / nx, size.y / ny, size.z / nz};

  by_index_.assign(std::size_t{nx} * ny * nz, 0);
  PartitionId next = 0;
  for (std::uint32_t k = 0; k < nz; ++k) {
    for (std::uint32_t i = 0; i < nx; ++i) {
      for (std::uint32_t jj = 0; jj < ny; ++jj) {
        const std::uint32_t j = (i % 2 == 0) ? ny - 1 - jj : jj;
        Partition p;
        p.id = next++;
        p.index = {i, j, k};
        p.box.lo = {bounds.lo.x + i * cell_.x, bounds.lo.y + j * cell_.y, bounds.lo.z + k * cell_.z};
        p.box.hi = {i + 1 == nx ? bounds.hi.x : bounds.lo.x + (i + 1) * cell_.x,
                    j + 1 == ny ? bounds.hi.y : bounds.lo.y + (j + 1) * cell_.y,
                    k + 1 == nz ? bounds.hi.z : bounds.lo.z + (k + 1) * cell_.z};
        by_index_[i + std::size_t{nx} * (j + std::size_t{ny} * k)] = p.id;
        parts_.push_back(p);
      }
    }
  }
  for (auto& p : parts_) {
    for (Face f : kAllFaces) {
      const int axis = axis_of(f);
      auto idx = p.index;
      if (positive(f)) {
        if (idx[axis] + 1 >= dims_[axis]) continue;
        ++idx[axis];
      } else {
        if (idx[axis] == 0) continue;
        --idx[axis];
      }
      p.adjacency[static_cast<int>(f) - 1] = id_of(idx);
    }
  }
}

PartitionId Topology::id_of(std::array<std::uint32_t, 3> index) const noexcept {
  return by_index_[index[0] + std::size_t{dims_[0]} * (index[1] + std::size_t{dims_[1]} * index[2])];
}

std::array<std::uint32_t, 3> Topology::index_of(const Vec3& p) const noexcept {
  std::array<std::uint32_t, 3> out{};
  for (int a = 0; a < 3; ++a) {
    const double rel = (component(p, a) - component(bounds_.lo, a)) / component(cell_, a);
    const double f = std::floor(rel);
    const double hi = static_cast<double>(dims_[a] - 1);
    out[a] = static_cast<std::uint32_t>(std::clamp(std::isnan(f) ? 0.0 : f, 0.0, hi));
  }
  return out;
}

Topology split_volume(const Box& bounds, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz) {
  return Topology(bounds, nx, ny, nz);
}

Topology split_cubes(const Vec3& origin, double half_side, std::uint32_t nx, std::uint32_t ny, std::uint32_t nz) {
  if (!(half_side > 0.0)) fail(ErrorKind::InvalidParameter, "cube half-side must be positive");
  const Vec3 half{half_side * nx, half_side * ny, half_side * nz};
  return Topology({origin - half, origin + half}, nx, ny, nz);
}

std::optional<Face> route_transfer(const Topology& topo, PartitionId from, const Vec3& destination) {
  const auto here = topo.at(from).index;
  const auto there = topo.index_of(destination);
  for (int a = 0; a < 3; ++a) {
    if (here[a] == there[a]) continue;
    const bool up = there[a] > here[a];
    static constexpr Face pos[3] = {Face::PosX, Face::PosY, Face::PosZ};
    static constexpr Face neg[3] = {Face::NegX, Face::NegY, Face::NegZ};
    return up ? pos[a] : neg[a];
  }
  return std::nullopt;
}

}  // namespace vesselsim::grid
