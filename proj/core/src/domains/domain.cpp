#include "vesselsim/domains/domain.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vesselsim/core/error.hpp"

namespace vesselsim::domains {

std::string_view to_string(WallPolicy p) noexcept {
  switch (p) {
    case WallPolicy::Bounce: return "bounce";
    case WallPolicy::Absorb: return "absorb";
    case WallPolicy::Virtual: return "virtual";
  }
  return "unknown";
}

namespace {

void validate_shape(const DomainShape& shape) {
  const bool ok = std::visit(
      [](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Sphere>) return s.radius > 0.0;
        else if constexpr (std::is_same_v<S, Cube>) return s.half_side > 0.0;
        else if constexpr (std::is_same_v<S, Cylinder>) return s.radius > 0.0 && s.height > 0.0;
        else return false;
      },
      shape);
  if (!ok) fail(ErrorKind::InvalidParameter, "domain shape must be bounded with positive dimensions");
}

}  // namespace

DomainTree::DomainTree() {
  Domain root;
  root.id = 0;
  root.shape = Unbounded{};
  domains_.push_back(std::move(root));
}

Domain& DomainTree::mutable_get(DomainId id) {
  if (id >= domains_.size()) fail(ErrorKind::Structural, "unknown domain id " + std::to_string(id));
  return domains_[id];
}

const Domain& DomainTree::get(DomainId id) const {
  if (id >= domains_.size()) fail(ErrorKind::Structural, "unknown domain id " + std::to_string(id));
  return domains_[id];
}

DomainId DomainTree::attach(DomainId parent, DomainShape shape, Vec3 local_center, Frame local_frame,
                            double restitution, WallPolicies walls) {
  validate_shape(shape);
  if (!(restitution >= 0.0 && restitution <= 1.0)) {
    fail(ErrorKind::InvalidParameter, "restitution coefficient must lie in [0, 1]");
  }
  if (!mutable_get(parent).attached) fail(ErrorKind::Structural, "cannot attach to a detached domain");
  Domain d;
  d.id = static_cast<DomainId>(domains_.size());
  d.shape = shape;
  d.local_center = local_center;
  local_frame.origin = {};
  d.local_frame = local_frame;
  d.parent = parent;
  d.restitution = restitution;
  d.walls = walls;
  domains_[parent].children.push_back(d.id);
  domains_.push_back(std::move(d));
  return domains_.back().id;
}

void DomainTree::detach(DomainId id) {
  if (id == root()) fail(ErrorKind::Structural, "the root domain cannot be detached");
  Domain& d = mutable_get(id);
  if (!d.attached) fail(ErrorKind::Structural, "domain already detached");
  const DomainId parent = *d.parent;

  std::vector<DomainId> stack{id};
  while (!stack.empty()) {
    const DomainId cur = stack.back();
    stack.pop_back();
    Domain& c = domains_[cur];
    c.attached = false;
    for (ObjectId obj : c.objects) {
      owner_[obj] = parent;
      domains_[parent].objects.insert(obj);
    }
    c.objects.clear();
    stack.insert(stack.end(), c.children.begin(), c.children.end());
  }
  auto& siblings = domains_[parent].children;
  siblings.erase(std::remove(siblings.begin(), siblings.end(), id), siblings.end());
  domains_[id].parent.reset();
}

Frame DomainTree::world_frame(DomainId id) const {
  const Domain& d = get(id);
  if (!d.attached) fail(ErrorKind::Structural, "domain " + std::to_string(id) + " is detached");
  if (!d.parent) return Frame::identity();
  const Frame parent = world_frame(*d.parent);
  Frame local = d.local_frame;
  local.origin = d.local_center;
  return parent.compose(local);
}

Vec3 DomainTree::world_center(DomainId id) const { return world_frame(id).origin; }

BoundingSphere DomainTree::bounding_sphere(DomainId id) const {
  const Domain& d = get(id);
  const double radius = std::visit(
      [](const auto& s) -> double {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Sphere>) return s.radius;
        else if constexpr (std::is_same_v<S, Cube>) return s.half_side * std::sqrt(3.0);
        else if constexpr (std::is_same_v<S, Cylinder>) return std::hypot(s.radius, 0.5 * s.height);
        else fail(ErrorKind::Unsupported, "an unbounded domain has no bounding sphere");
      },
      d.shape);
  return {world_center(id), radius};
}

void DomainTree::add_object(DomainId domain, ObjectId object) {
  Domain& d = mutable_get(domain);
  if (!d.attached) fail(ErrorKind::Structural, "cannot add objects to a detached domain");
  if (owner_.contains(object)) fail(ErrorKind::Structural, "object " + std::to_string(object) + " already owned");
  owner_.emplace(object, domain);
  d.objects.insert(object);
}

void DomainTree::remove_object(ObjectId object) {
  auto it = owner_.find(object);
  if (it == owner_.end()) fail(ErrorKind::Structural, "object " + std::to_string(object) + " has no owner");
  domains_[it->second].objects.erase(object);
  owner_.erase(it);
}

void DomainTree::move_object(ObjectId object, DomainId to) {
  Domain& target = mutable_get(to);
  if (!target.attached) fail(ErrorKind::Structural, "cannot move objects into a detached domain");
  auto it = owner_.find(object);
  if (it == owner_.end()) fail(ErrorKind::Structural, "object " + std::to_string(object) + " has no owner");
  domains_[it->second].objects.erase(object);
  it->second = to;
  target.objects.insert(object);
}

std::optional<DomainId> DomainTree::owner_of(ObjectId object) const {
  auto it = owner_.find(object);
  if (it == owner_.end()) return std::nullopt;
  return it->second;
}

void DomainTree::check_integrity() const {
  std::size_t roots = 0;
  std::size_t owned = 0;
  for (const Domain& d : domains_) {
    if (!d.attached) {
      if (!d.objects.empty()) fail(ErrorKind::Structural, "detached domain still owns objects");
      continue;
    }
    if (!d.parent) {
      ++roots;
      if (!std::holds_alternative<Unbounded>(d.shape)) fail(ErrorKind::Structural, "root must be unbounded");
    } else {
      const Domain& p = get(*d.parent);
      if (!p.attached) fail(ErrorKind::Structural, "attached domain under a detached parent");
      if (std::count(p.children.begin(), p.children.end(), d.id) != 1) {
        fail(ErrorKind::Structural, "parent/child links disagree for domain " + std::to_string(d.id));
      }
    }
    for (ObjectId obj : d.objects) {
      auto it = owner_.find(obj);
      if (it == owner_.end() || it->second != d.id) {
        fail(ErrorKind::Structural, "object " + std::to_string(obj) + " ownership mismatch");
      }
    }
    owned += d.objects.size();
  }
  if (roots != 1) fail(ErrorKind::Structural, "tree must have exactly one root");
  if (owned != owner_.size()) fail(ErrorKind::Structural, "object ownership count mismatch");
}

Interval interval_around(double coordinate, double radius) noexcept {
  return {coordinate - radius, coordinate + radius};
}

Overlap interval_prefilter(Interval domain, Interval object) {
  if (domain.lo > domain.hi || object.lo > object.hi) {
    fail(ErrorKind::InvalidParameter, "interval_prefilter: inverted interval");
  }
  return (object.lo <= domain.hi && domain.lo <= object.hi) ? Overlap::MayCollide : Overlap::NoOverlap;
}

IntervalIndex::IntervalIndex(std::vector<Entry> entries) : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    return a.span.lo < b.span.lo || (a.span.lo == b.span.lo && a.id < b.id);
  });
  for (const Entry& e : entries_) max_width_ = std::max(max_width_, e.span.hi - e.span.lo);
}

void IntervalIndex::query(Interval q, std::vector<std::uint64_t>& out) const {
  // Entries starting before q.lo - max_width cannot reach q.lo.
  const double first_lo = q.lo - max_width_;
  auto it = std::lower_bound(entries_.begin(), entries_.end(), first_lo,
                             [](const Entry& e, double v) { return e.span.lo < v; });
  for (; it != entries_.end() && it->span.lo <= q.hi; ++it) {
    if (it->span.hi >= q.lo) out.push_back(it->id);
  }
}

std::vector<std::pair<ObjectId, DomainId>> sweep_inner_domains(const DomainTree& tree, DomainId parent,
                                                               std::span<const NanoObject> objects) {
  const Domain& p = tree.get(parent);
  const Vec3 ref = tree.world_center(parent);

  std::vector<IntervalIndex::Entry> inner;
  inner.reserve(p.children.size());
  for (DomainId child : p.children) {
    const BoundingSphere bs = tree.bounding_sphere(child);
    inner.push_back({interval_around(norm(bs.center - ref), bs.radius), child});
  }
  const IntervalIndex index(std::move(inner));

  std::vector<std::pair<ObjectId, DomainId>> pairs;
  std::vector<std::uint64_t> hits;
  for (const NanoObject& obj : objects) {
    hits.clear();
    index.query(interval_around(norm(obj.center - ref), obj.radius), hits);
    for (std::uint64_t d : hits) pairs.emplace_back(obj.id, static_cast<DomainId>(d));
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

}  // namespace vesselsim::domains
