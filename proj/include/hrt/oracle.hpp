#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "hrt/core.hpp"

namespace hrt {

struct OracleLimit {
  std::size_t max_residents = 12;
  std::size_t max_pairs = 24;
  std::uint64_t node_budget = 200'000'000;
};

class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Every weakly stable matching, found by walking all capacity-respecting
// assignments of residents (to an acceptable hospital or to nothing). Throws
// OracleLimitExceeded instead of returning a partial answer.
std::set<Matching> enumerate_stable_matchings(const Instance& instance,
                                              const OracleLimit& limit = {});

std::size_t max_stable_size(const Instance& instance,
                            const OracleLimit& limit = {});

}  // namespace hrt
