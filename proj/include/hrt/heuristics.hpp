#pragma once

#include <cstdint>

#include "hrt/core.hpp"

namespace hrt {

struct TieBreakPolicy {
  enum class Mode { kSeededRandom, kListOrder };
  Mode mode = Mode::kListOrder;
  std::uint64_t seed = 0;

  static TieBreakPolicy list_order() { return {Mode::kListOrder, 0}; }
  static TieBreakPolicy seeded(std::uint64_t seed) {
    return {Mode::kSeededRandom, seed};
  }
};

// Replaces every tie on both sides by a permutation of its members.
Instance break_ties(const Instance& instance, TieBreakPolicy policy);

// Resident-oriented deferred acceptance. Throws std::invalid_argument if any
// list has a tie.
Matching gale_shapley(const Instance& strict_instance);

// gale_shapley(break_ties(instance, seeded(seed))); weakly stable in
// `instance`.
Matching warm_start(const Instance& instance, std::uint64_t seed);

}  // namespace hrt
