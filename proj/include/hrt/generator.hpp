#pragma once

#include <cstddef>
#include <cstdint>

#include "hrt/core.hpp"

namespace hrt {

struct GeneratorConfig {
  std::size_t num_residents = 0;   // n1
  std::size_t num_hospitals = 0;   // n2
  std::size_t total_posts = 0;     // C
  std::size_t list_length = 0;     // L, residents' list length
  double resident_tie_density = 0.0;
  double hospital_tie_density = 0.0;
  std::uint64_t seed = 0;
};

// Throws std::invalid_argument on an invalid configuration (zero agents,
// L > n2, densities outside [0, 1]).
void validate(const GeneratorConfig& config);

// Posts go to hospitals one at a time uniformly at random. Each resident lists
// L distinct hospitals in random order; each hospital lists exactly the
// residents that chose it, in random order. Walking a list, every agent after
// the first joins the preceding tie with probability equal to that side's tie
// density.
Instance generate(const GeneratorConfig& config);

// n2 = floor(0.07 * n1), C = n1, L = 5, strict resident lists. Throws
// std::invalid_argument when n1 is too small for five distinct hospitals.
GeneratorConfig sfas_like(std::size_t num_residents, double hospital_tie_density,
                          std::uint64_t seed);

}  // namespace hrt
