#include "vesselsim/engine/partition_world.hpp"

#include <algorithm>
#include <unordered_map>

#include "vesselsim/collision/broad_phase.hpp"
#include "vesselsim/collision/cylinder.hpp"
#include "vesselsim/core/error.hpp"
#include "vesselsim/core/thread_pool.hpp"
#include "vesselsim/engine/pairs.hpp"
#include "vesselsim/engine/worklists.hpp"
#include "vesselsim/motion/motion.hpp"

namespace vesselsim::engine {

namespace {

constexpr std::size_t kFanout = 4;
// Transfers need at most one hop per axis.
constexpr std::uint32_t kMaxHops = 3;

template <typename Fn>
void for_each_index(ThreadPool* pool, std::span<const ObjectId> ids, Fn&& fn) {
  if (pool == nullptr || pool->workers() == 1 || ids.size() < 256) {
    for (std::size_t i = 0; i < ids.size(); ++i) fn(i);
    return;
  }
  const auto lists = partition_worklists(ids, pool->workers(), kFanout);
  pool->run(lists.size(), [&](std::size_t l) {
    for (std::size_t i : lists[l]) fn(i);
  });
}

}  // namespace

PartitionWorld::PartitionWorld(std::shared_ptr<const vessel::Scenario> scenario, grid::Topology topology,
                               grid::PartitionId id, ThreadPool* pool)
    : scenario_(std::move(scenario)), topology_(std::move(topology)), id_(id), pool_(pool) {
  if (id_ >= topology_.size()) fail(ErrorKind::InvalidParameter, "partition id outside the topology");
  ghost_width_ = 2.0 * scenario_->max_radius() * (1.0 + 1e-9);
  pending_.id = id_;
}

void PartitionWorld::sort_objects() {
  std::sort(objects_.begin(), objects_.end(), [](const NanoObject& a, const NanoObject& b) { return a.id < b.id; });
}

std::vector<NanoObject> PartitionWorld::snapshot(std::optional<ZRange> z_range) const {
  std::vector<NanoObject> out;
  for (const auto& o : objects_) {
    if (z_range && (o.center.z < z_range->first || o.center.z > z_range->second)) continue;
    out.push_back(o);
  }
  return out;
}

void PartitionWorld::insert(std::span<const NanoObject> objects) {
  for (const auto& o : objects) {
    if (topology_.owner_of(o.center) != id_) {
      fail(ErrorKind::InvariantBreach, "object " + std::to_string(o.id) + " inserted into the wrong partition");
    }
    objects_.push_back(o);
  }
  sort_objects();
  for (std::size_t i = 1; i < objects_.size(); ++i) {
    if (objects_[i].id == objects_[i - 1].id) {
      fail(ErrorKind::InvariantBreach, "duplicate object id " + std::to_string(objects_[i].id));
    }
  }
}

std::size_t PartitionWorld::remove(std::span<const ObjectId> ids) {
  std::vector<ObjectId> sorted(ids.begin(), ids.end());
  std::sort(sorted.begin(), sorted.end());
  const auto before = objects_.size();
  std::erase_if(objects_, [&sorted](const NanoObject& o) {
    return std::binary_search(sorted.begin(), sorted.end(), o.id);
  });
  return before - objects_.size();
}

double PartitionWorld::diffusion_of(const NanoObject& o) const {
  const auto& k = scenario_->kind(o.kind);
  return o.radius == k.radius ? k.diffusion : scenario_->diffusion(o.radius);
}

std::vector<ObjectEnvelope> PartitionWorld::outbound() {
  std::vector<ObjectEnvelope> out;
  std::vector<NanoObject> keep;
  keep.reserve(objects_.size());
  for (auto& o : objects_) {
    const auto face = grid::route_transfer(topology_, id_, o.center);
    if (!face) {
      keep.push_back(std::move(o));
      continue;
    }
    out.push_back({std::move(o), id_, id_, *face, 1});
  }
  objects_ = std::move(keep);
  return out;
}

std::vector<ObjectEnvelope> PartitionWorld::local_phase(StepIndex step) {
  const auto& s = *scenario_;
  const auto& p = s.params();
  const double dt = p.dt;
  const StepIndex event_step = step + 1;

  struct Outcome {
    bool exited = false;
    bool clamped = false;
    std::uint32_t contacts = 0;
    std::optional<vessel::WallAssimilation> assimilation;
  };
  std::vector<Outcome> outcomes(objects_.size());
  std::vector<ObjectId> ids(objects_.size());
  for (std::size_t i = 0; i < objects_.size(); ++i) ids[i] = objects_[i].id;

  for_each_index(pool_, ids, [&](std::size_t i) {
    NanoObject& o = objects_[i];
    Outcome& out = outcomes[i];
    o.start = o.center;
    if (o.mobility == Mobility::Fixed) return;
    const auto m = motion::advance(o, s.flow(), diffusion_of(o), dt, p.seed, step);
    Vec3 end = m.center;
    Vec3 vel = m.velocity;

    if (collision::cylinder_hit_test(end, o.radius, s.cylinder(), s.frame()).top_or_bottom()) {
      out.exited = true;
      return;
    }
    if (collision::cylinder_hit_test(end, o.radius, s.cylinder(), s.frame()).side) {
      std::optional<vessel::WallAssimilation> hit;
      const bool carrier = o.kind == Kind::Carrier;
      const auto res = collision::resolve_side_wall(
          {o.start, end, vel, o.radius}, s.cylinder(), s.frame(), p.wall_restitution, dt,
          [&](const collision::WallHit& h) {
            if (!carrier) return collision::ContactAction::Bounce;
            hit = s.wall_assimilation(h.impact_point, o.radius);
            return hit ? collision::ContactAction::Absorb : collision::ContactAction::Bounce;
          });
      out.contacts = res.contacts;
      out.clamped = res.clamped;
      if (res.absorbed) {
        out.assimilation = hit;
        return;
      }
      end = res.end;
      vel = res.velocity;
      if (collision::cylinder_hit_test(end, o.radius, s.cylinder(), s.frame()).top_or_bottom()) {
        out.exited = true;
        return;
      }
    }
    o.center = end;
    o.velocity = vel;
  });

  std::vector<NanoObject> keep;
  keep.reserve(objects_.size());
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    NanoObject& o = objects_[i];
    const Outcome& out = outcomes[i];
    pending_.wall_contacts += out.contacts;
    pending_.clamped += out.clamped ? 1 : 0;
    o.wall_hits += out.contacts;
    if (out.assimilation) {
      pending_.events.push_back({event_step, o.id, out.assimilation->cell, out.assimilation->receptor});
      continue;
    }
    if (out.exited) {
      ++pending_.exited[index_of(o.kind)];
      continue;
    }
    keep.push_back(std::move(o));
  }
  objects_ = std::move(keep);
  return outbound();
}

std::vector<ObjectEnvelope> PartitionWorld::deliver(std::span<const ObjectEnvelope> envelopes) {
  std::vector<ObjectEnvelope> forward;
  std::vector<NanoObject> arrived;
  for (const auto& env : envelopes) {
    const auto face = grid::route_transfer(topology_, id_, env.object.center);
    if (!face) {
      arrived.push_back(env.object);
      continue;
    }
    if (env.hops >= kMaxHops) {
      fail(ErrorKind::InvariantBreach, "object " + std::to_string(env.object.id) + " exceeded the transfer hop bound");
    }
    ObjectEnvelope next = env;
    next.holder = id_;
    next.via = *face;
    ++next.hops;
    forward.push_back(std::move(next));
  }
  insert(arrived);
  return forward;
}

std::vector<GhostBatch> PartitionWorld::ghosts(int axis) const {
  const auto& part = partition();
  std::vector<GhostBatch> out;
  const grid::Face faces[2] = {axis == 0 ? grid::Face::NegX : axis == 1 ? grid::Face::NegY : grid::Face::NegZ,
                               axis == 0 ? grid::Face::PosX : axis == 1 ? grid::Face::PosY : grid::Face::PosZ};
  for (grid::Face f : faces) {
    const auto nb = part.neighbor(f);
    if (!nb) continue;
    GhostBatch batch{*nb, {}};
    const double lo = grid::component(part.box.lo, axis);
    const double hi = grid::component(part.box.hi, axis);
    auto near_face = [&](const NanoObject& o) {
      const double v = grid::component(o.center, axis);
      return grid::positive(f) ? v >= hi - ghost_width_ : v <= lo + ghost_width_;
    };
    for (const auto& o : objects_) {
      if (near_face(o)) batch.objects.push_back(o);
    }
    // Ghosts that arrived across earlier axes are forwarded so that corner neighbors see them.
    for (const auto& g : ghosts_) {
      if (near_face(g) && axis > 0) batch.objects.push_back(g);
    }
    out.push_back(std::move(batch));
  }
  return out;
}

void PartitionWorld::accept_ghosts(std::span<const NanoObject> ghosts) {
  ghosts_.insert(ghosts_.end(), ghosts.begin(), ghosts.end());
}

std::vector<ObjectEnvelope> PartitionWorld::pair_phase(StepIndex step) {
  (void)step;
  const auto& s = *scenario_;
  const double dt = s.params().dt;
  const std::size_t owned = objects_.size();

  std::vector<collision::SphereRef> refs;
  refs.reserve(owned + ghosts_.size());
  std::unordered_map<ObjectId, std::size_t> index;
  index.reserve(owned + ghosts_.size());
  for (std::size_t i = 0; i < owned; ++i) {
    refs.push_back({objects_[i].id, objects_[i].center, objects_[i].radius});
    index.emplace(objects_[i].id, i);
  }
  for (std::size_t g = 0; g < ghosts_.size(); ++g) {
    const auto& o = ghosts_[g];
    if (!index.emplace(o.id, owned + g).second) {
      fail(ErrorKind::InvariantBreach, "ghost " + std::to_string(o.id) + " duplicates a known object");
    }
    refs.push_back({o.id, o.center, o.radius});
  }
  auto at = [&](std::size_t k) -> const NanoObject& { return k < owned ? objects_[k] : ghosts_[k - owned]; };

  // Reference point on the partition's axis line, one box length below it: the
  // swept distance then follows the axial coordinate, which spreads objects
  // in a long vessel far better than the distance from the box center.
  const auto& box = partition().box;
  const Vec3 reference{box.center().x, box.center().y, box.lo.z - (box.hi.z - box.lo.z)};
  const auto pairs = collision::overlapping_pairs(refs, reference, nullptr, pool_);

  // Partners of each owned object, ascending by id.
  std::vector<std::vector<std::size_t>> partners(owned);
  for (const auto& pr : pairs) {
    const std::size_t ia = index.at(pr.a);
    const std::size_t ib = index.at(pr.b);
    if (ia < owned) partners[ia].push_back(ib);
    if (ib < owned) partners[ib].push_back(ia);
  }

  struct Delta {
    Vec3 displacement{};
    Vec3 velocity{};
    bool absorbed = false;
    std::uint32_t contacts = 0;
  };
  std::vector<Delta> deltas(owned);
  std::vector<ObjectId> ids(owned);
  for (std::size_t i = 0; i < owned; ++i) ids[i] = objects_[i].id;

  for_each_index(pool_, ids, [&](std::size_t i) {
    auto& list = partners[i];
    std::sort(list.begin(), list.end(), [&](std::size_t x, std::size_t y) { return at(x).id < at(y).id; });
    const NanoObject& self = objects_[i];
    Delta& d = deltas[i];
    for (std::size_t k : list) {
      const NanoObject& other = at(k);
      const bool first = self.id < other.id;
      const PairOutcome po = first ? resolve_pair(self, other, s, dt) : resolve_pair(other, self, s, dt);
      const PairEffect& e = first ? po.first : po.second;
      if (!e.contact) continue;
      ++d.contacts;
      d.displacement += e.displacement;
      d.velocity += e.velocity_change;
      d.absorbed = d.absorbed || e.absorbed;
    }
  });

  std::vector<NanoObject> keep;
  keep.reserve(owned);
  for (std::size_t i = 0; i < owned; ++i) {
    NanoObject& o = objects_[i];
    const Delta& d = deltas[i];
    pending_.pair_contacts += d.contacts;
    o.pair_hits += d.contacts;
    if (d.absorbed) {
      ++pending_.absorbed;
      continue;
    }
    if (d.contacts > 0 && o.mobility != Mobility::Fixed) {
      o.center += d.displacement;
      o.velocity += d.velocity;
      const auto hits = collision::cylinder_hit_test(o.center, o.radius, s.cylinder(), s.frame());
      if (hits.top_or_bottom()) {
        ++pending_.exited[index_of(o.kind)];
        continue;
      }
      if (hits.side) {
        o.center = collision::clamp_inside_side(o.center, o.radius, s.cylinder(), s.frame());
        ++pending_.clamped;
      }
    }
    keep.push_back(std::move(o));
  }
  objects_ = std::move(keep);
  ghosts_.clear();
  return outbound();
}

PartitionReport PartitionWorld::report() {
  PartitionReport out = std::move(pending_);
  pending_ = PartitionReport{};
  pending_.id = id_;
  out.id = id_;
  out.live = {};
  for (const auto& o : objects_) ++out.live[index_of(o.kind)];
  reception::sort_events(out.events);
  return out;
}

}  // namespace vesselsim::engine
