#include "vesselsim/engine/worklists.hpp"

#include <algorithm>
#include <numeric>

#include "vesselsim/core/error.hpp"

namespace vesselsim::engine {

std::vector<std::vector<std::size_t>> partition_worklists(std::span<const ObjectId> ids, std::size_t workers,
                                                          std::size_t fanout) {
  const std::size_t lists = workers * fanout;
  if (lists == 0) fail(ErrorKind::InvalidParameter, "workers * fanout must be at least 1");
  std::vector<std::size_t> order(ids.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&ids](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });

  std::vector<std::vector<std::size_t>> out(lists);
  const std::size_t base = ids.size() / lists;
  const std::size_t extra = ids.size() % lists;
  std::size_t pos = 0;
  for (std::size_t i = 0; i < lists; ++i) {
    const std::size_t n = base + (i < extra ? 1 : 0);
    out[i].assign(order.begin() + static_cast<std::ptrdiff_t>(pos), order.begin() + static_cast<std::ptrdiff_t>(pos + n));
    pos += n;
  }
  return out;
}

}  // namespace vesselsim::engine
