#include "vesselsim/collision/broad_phase.hpp"

#include <algorithm>
#include <limits>

#include "vesselsim/core/thread_pool.hpp"

namespace vesselsim::collision {

namespace {

struct SweepEntry {
  double lo;
  double hi;
  ObjectId id;
  std::uint32_t index;
};

// Sweep rows [begin, end) against everything after them in sorted order.
void sweep_rows(const std::vector<SweepEntry>& sorted, std::size_t begin, std::size_t end,
                std::vector<CandidatePair>& out, std::uint64_t& comparisons) {
  for (std::size_t i = begin; i < end; ++i) {
    const double hi = sorted[i].hi;
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      ++comparisons;
      if (sorted[j].lo > hi) break;
      out.push_back(CandidatePair::of(sorted[i].id, sorted[j].id));
    }
  }
}

std::vector<SweepEntry> sweep_entries(std::span<const SphereRef> objects, const Vec3& reference_point,
                                      BroadPhaseStats* stats) {
  std::vector<SweepEntry> entries;
  entries.reserve(objects.size());
  for (std::uint32_t i = 0; i < objects.size(); ++i) {
    const double dist = norm(objects[i].center - reference_point);
    // Widen by a few ulps so rounding in `dist` cannot drop a tangent pair.
    const double slack = 8.0 * std::numeric_limits<double>::epsilon() * (dist + objects[i].radius);
    const double reach = objects[i].radius + slack;
    entries.push_back({dist - reach, dist + reach, objects[i].id, i});
  }
  std::uint64_t sort_cmp = 0;
  std::sort(entries.begin(), entries.end(), [&sort_cmp](const SweepEntry& a, const SweepEntry& b) {
    ++sort_cmp;
    return a.lo < b.lo || (a.lo == b.lo && a.id < b.id);
  });
  if (stats) stats->sort_comparisons += sort_cmp;
  return entries;
}

}  // namespace

std::vector<CandidatePair> broad_phase(std::span<const SphereRef> objects, const Vec3& reference_point,
                                       BroadPhaseStats* stats, ThreadPool* pool) {
  std::vector<SweepEntry> entries = sweep_entries(objects, reference_point, stats);

  std::vector<CandidatePair> pairs;
  std::uint64_t sweep_cmp = 0;
  const std::size_t n = entries.size();
  if (pool == nullptr || pool->workers() == 1 || n < 4096) {
    sweep_rows(entries, 0, n, pairs, sweep_cmp);
  } else {
    const std::size_t chunks = pool->workers() * 4;
    std::vector<std::vector<CandidatePair>> parts(chunks);
    std::vector<std::uint64_t> counts(chunks, 0);
    pool->run(chunks, [&](std::size_t c) {
      const std::size_t b = n * c / chunks;
      const std::size_t e = n * (c + 1) / chunks;
      sweep_rows(entries, b, e, parts[c], counts[c]);
    });
    for (std::size_t c = 0; c < chunks; ++c) {
      pairs.insert(pairs.end(), parts[c].begin(), parts[c].end());
      sweep_cmp += counts[c];
    }
  }
  std::sort(pairs.begin(), pairs.end());
  if (stats) stats->sweep_comparisons += sweep_cmp;
  return pairs;
}

bool sphere_sphere_test(const Vec3& ca, double ra, const Vec3& cb, double rb) noexcept {
  const double reach = ra + rb;
  return norm2(ca - cb) <= reach * reach;
}

std::vector<CandidatePair> overlapping_pairs(std::span<const SphereRef> objects, const Vec3& reference_point,
                                             BroadPhaseStats* stats, ThreadPool* pool) {
  std::vector<SweepEntry> entries = sweep_entries(objects, reference_point, stats);
  // Same sweep as broad_phase, with the exact test applied as candidates appear.
  auto confirm_rows = [&](std::size_t begin, std::size_t end, std::vector<CandidatePair>& out, std::uint64_t& cmp) {
    for (std::size_t i = begin; i < end; ++i) {
      const double hi = entries[i].hi;
      const SphereRef& a = objects[entries[i].index];
      for (std::size_t j = i + 1; j < entries.size(); ++j) {
        ++cmp;
        if (entries[j].lo > hi) break;
        const SphereRef& b = objects[entries[j].index];
        if (sphere_sphere_test(a.center, a.radius, b.center, b.radius)) out.push_back(CandidatePair::of(a.id, b.id));
      }
    }
  };
  std::vector<CandidatePair> confirmed;
  std::uint64_t sweep_cmp = 0;
  const std::size_t n = entries.size();
  if (pool == nullptr || pool->workers() == 1 || n < 4096) {
    confirm_rows(0, n, confirmed, sweep_cmp);
  } else {
    const std::size_t chunks = pool->workers() * 4;
    std::vector<std::vector<CandidatePair>> parts(chunks);
    std::vector<std::uint64_t> counts(chunks, 0);
    pool->run(chunks, [&](std::size_t c) { confirm_rows(n * c / chunks, n * (c + 1) / chunks, parts[c], counts[c]); });
    for (std::size_t c = 0; c < chunks; ++c) {
      confirmed.insert(confirmed.end(), parts[c].begin(), parts[c].end());
      sweep_cmp += counts[c];
    }
  }
  std::sort(confirmed.begin(), confirmed.end());
  if (stats) stats->sweep_comparisons += sweep_cmp;
  return confirmed;
}

std::vector<CandidatePair> overlapping_pairs_brute_force(std::span<const SphereRef> objects) {
  std::vector<CandidatePair> out;
  for (std::size_t i = 0; i < objects.size(); ++i) {
    for (std::size_t j = i + 1; j < objects.size(); ++j) {
      if (sphere_sphere_test(objects[i].center, objects[i].radius, objects[j].center, objects[j].radius)) {
        out.push_back(CandidatePair::of(objects[i].id, objects[j].id));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace vesselsim::collision
