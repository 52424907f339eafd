#pragma once

// Instance reduction for HRT with ties on the hospitals' side only. Both
// procedures remove pairs that belong to no stable matching and block none,
// so the reduced instance has the same stable matchings as the input.

#include <cstdint>
#include <optional>
#include <vector>

#include "hrt/core.hpp"

namespace hrt {

struct Reduction {
  Instance reduced;
  std::vector<Pair> deleted;  // sorted by (resident, hospital)
};

struct ReduceOrder {
  // Unset: hospitals / free residents are taken from a FIFO queue seeded in
  // index order. Set: the next agent is drawn at random from the pending set.
  std::optional<std::uint64_t> shuffle_seed;
};

// Hospitals offer to their whole active tie while vacancies allow it; each
// resident that accepts drops every hospital it ranks below the offerer.
// Throws std::invalid_argument if any resident list contains a tie.
Reduction hospitals_offer(const Instance& instance, ReduceOrder order = {});

// Residents apply down their lists; a hospital that reaches capacity drops
// every resident ranked strictly below its c-th choice assignee.
// Throws std::invalid_argument if any resident list contains a tie.
Reduction residents_apply(const Instance& instance, ReduceOrder order = {});

// hospitals_offer followed by residents_apply, one pass each.
Reduction reduce(const Instance& instance, ReduceOrder order = {});

}  // namespace hrt
