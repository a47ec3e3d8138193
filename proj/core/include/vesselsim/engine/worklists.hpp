#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "vesselsim/core/nano_object.hpp"

namespace vesselsim::engine {

/// Splits objects into fanout * workers sublists of near-equal size (sizes
/// differ by at most one). Objects are ordered by id and cut into contiguous
/// runs, so the assignment depends only on the ids. Entries are indices into `ids`.
std::vector<std::vector<std::size_t>> partition_worklists(std::span<const ObjectId> ids, std::size_t workers,
                                                          std::size_t fanout);

}  // namespace vesselsim::engine
