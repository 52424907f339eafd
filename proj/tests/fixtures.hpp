#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "hrt/core.hpp"
#include "hrt/generator.hpp"
#include "hrt/instance_io.hpp"
#include "hrt/oracle.hpp"
#include "hrt/random.hpp"

namespace fixtures {

// Six residents, three hospitals; h2 lists r2, which r2 does not reciprocate.
inline const char* const kFigure1 =
    "6 3\n"
    "r1: h1 h2\n"
    "r2: h1\n"
    "r3: h1 h3\n"
    "r4: h2\n"
    "r5: h2 h3\n"
    "r6: h1 h2\n"
    "h1: 2: r1 r2 r3 r6\n"
    "h2: 2: r2 r1 r6 ( r4 r5 )\n"
    "h3: 2: r5 r3\n";

inline const char* const kSinglePair = "1 1\nr1: h1\nh1: 1: r1\n";

inline hrt::Instance parse(const std::string& text) {
  auto parsed = hrt::parse_instance(text);
  if (!parsed.instance) throw std::runtime_error("fixture does not parse");
  return *parsed.instance;
}

inline hrt::Instance figure1() { return parse(kFigure1); }

inline hrt::ResidentId r(int one_based) { return hrt::resident(one_based - 1); }
inline hrt::HospitalId h(int one_based) { return hrt::hospital(one_based - 1); }

inline hrt::Matching matching(std::size_t n1, std::vector<std::pair<int, int>> pairs) {
  hrt::Matching m(n1);
  for (auto [i, j] : pairs) m.assign(r(i), h(j));
  return m;
}

inline hrt::Matching m0() {
  return matching(6, {{1, 1}, {2, 1}, {3, 3}, {5, 2}, {6, 2}});
}
inline hrt::Matching m1() {
  return matching(6, {{1, 1}, {2, 1}, {3, 3}, {4, 2}, {5, 3}, {6, 2}});
}

// Oracle limits wide enough for the randomized small-instance suites.
inline hrt::OracleLimit wide_limit() {
  hrt::OracleLimit limit;
  limit.max_residents = 12;
  limit.max_pairs = 64;
  return limit;
}

// Random small instance with strict resident lists unless resident_ties.
inline hrt::Instance small_instance(std::uint64_t seed, std::size_t max_residents,
                                    bool resident_ties = false) {
  hrt::Rng rng(seed);
  hrt::GeneratorConfig c;
  c.num_residents = 1 + rng.below(max_residents);
  c.num_hospitals = 1 + rng.below(4);
  c.total_posts = rng.below(c.num_residents + 2);
  c.list_length = rng.below(std::min<std::size_t>(c.num_hospitals, 3) + 1);
  c.hospital_tie_density = rng.unit();
  c.resident_tie_density = resident_ties ? rng.unit() : 0.0;
  c.seed = rng.next();
  return hrt::generate(c);
}

// Every assignment of residents to nothing or an acceptable hospital, kept
// when it respects capacities and no acceptable pair blocks. Shares nothing
// with the oracle's search.
inline std::set<hrt::Matching> naive_stable_set(const hrt::Instance& inst) {
  const hrt::RankTable ranks(inst);
  std::set<hrt::Matching> out;
  hrt::Matching m(inst.num_residents());
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == inst.num_residents()) {
      if (hrt::validate_matching(inst, m).empty() &&
          hrt::blocking_pairs(inst, ranks, m).empty()) {
        out.insert(m);
      }
      return;
    }
    m.unassign(hrt::resident(i));
    walk(i + 1);
    for (hrt::HospitalId hj : inst.prefs(hrt::resident(i)).flatten()) {
      m.assign(hrt::resident(i), hj);
      walk(i + 1);
    }
    m.unassign(hrt::resident(i));
  };
  walk(0);
  return out;
}

}  // namespace fixtures
