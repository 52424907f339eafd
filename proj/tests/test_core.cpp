#include "doctest.h"
#include "fixtures.hpp"
#include "hrt/core.hpp"

using namespace hrt;
using fixtures::figure1;
using fixtures::h;
using fixtures::r;

TEST_CASE("ranks on figure 1") {
  const Instance inst = figure1();
  const RankTable ranks = build_rank_table(inst);
  CHECK(ranks.of(r(1), h(1)) == 1);
  CHECK(ranks.of(r(1), h(2)) == 2);
  CHECK(ranks.of(h(2), r(4)) == ranks.of(h(2), r(5)));
  CHECK(ranks.of(h(2), r(4)) == 3);
  CHECK(ranks.of(h(2), r(1)) == 1);  // r2 pruned from h2
  CHECK(ranks.of(r(2), h(3)) == kInfiniteRank);
  CHECK(ranks.of(h(3), r(2)) == kInfiniteRank);
  CHECK(ranks.of(r(2), h(2)) == kInfiniteRank);
  CHECK(ranks.of(h(2), r(2)) == kInfiniteRank);
}

TEST_CASE("rank is finite both ways exactly on acceptable pairs") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = fixtures::small_instance(seed, 10, seed % 2 == 0);
    const RankTable ranks(inst);
    std::size_t finite = 0;
    for (std::size_t i = 0; i < inst.num_residents(); ++i) {
      for (std::size_t j = 0; j < inst.num_hospitals(); ++j) {
        const bool ok = inst.is_acceptable(resident(i), hospital(j));
        CHECK((ranks.of(resident(i), hospital(j)) != kInfiniteRank) == ok);
        CHECK((ranks.of(hospital(j), resident(i)) != kInfiniteRank) == ok);
        finite += ok;
      }
    }
    CHECK(finite == inst.num_acceptable_pairs());
  }
}

TEST_CASE("instance construction rejects malformed input") {
  using RP = ResidentPrefs;
  using HP = HospitalPrefs;
  auto one = [](int j) { return RP{{{hospital(j)}}}; };
  // r1 lists h1 but h1 does not list r1.
  CHECK_THROWS_AS(Instance({one(0)}, {HospitalSpec{1, HP{}}}), std::invalid_argument);
  // Out of range hospital.
  CHECK_THROWS_AS(Instance({one(3)}, {HospitalSpec{1, HP{{{resident(0)}}}}}),
                  std::invalid_argument);
  // Negative capacity.
  CHECK_THROWS_AS(Instance({RP{}}, {HospitalSpec{-1, HP{}}}), std::invalid_argument);
  // Empty tie.
  CHECK_THROWS_AS(Instance({RP{{{}}}}, {HospitalSpec{1, HP{}}}), std::invalid_argument);
  // Repeated agent.
  CHECK_THROWS_AS(Instance({RP{{{hospital(0)}, {hospital(0)}}}},
                           {HospitalSpec{1, HP{{{resident(0)}}}}}),
                  std::invalid_argument);
  CHECK_NOTHROW(Instance({one(0)}, {HospitalSpec{0, HP{{{resident(0)}}}}}));
}

TEST_CASE("blocking pair examples") {
  const Instance inst = figure1();
  const RankTable ranks(inst);
  CHECK_FALSE(is_blocking_pair(inst, ranks, fixtures::m0(), r(4), h(2)));
  const Matching empty(6);
  for (const auto& [ri, hj] : inst.acceptable_pairs()) {
    CHECK(is_blocking_pair(inst, ranks, empty, ri, hj));
  }
  const Matching only = fixtures::matching(6, {{1, 2}});
  CHECK(is_blocking_pair(inst, ranks, only, r(1), h(1)));
  CHECK_THROWS_AS(is_blocking_pair(inst, ranks, empty, r(2), h(3)), std::invalid_argument);
}

TEST_CASE("stability on figure 1") {
  const Instance inst = figure1();
  const RankTable ranks(inst);
  CHECK(is_stable(inst, ranks, fixtures::m0()));
  CHECK(is_stable(inst, ranks, fixtures::m1()));
  CHECK_FALSE(is_stable(inst, ranks, Matching(6)));
  CHECK(blocking_pairs(inst, ranks, fixtures::m1()).empty());
  CHECK(matching_size(fixtures::m0()) == 5);
  CHECK(matching_size(fixtures::m1()) == 6);
  CHECK(matching_size(Matching(6)) == 0);
}

TEST_CASE("pairwise and per-hospital stability scans agree") {
  Rng rng(99);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = fixtures::small_instance(seed, 10, seed % 2 == 1);
    const RankTable ranks(inst);
    for (int k = 0; k < 30; ++k) {
      Matching m(inst.num_residents());
      std::vector<int> load(inst.num_hospitals(), 0);
      for (std::size_t i = 0; i < inst.num_residents(); ++i) {
        const auto list = inst.prefs(resident(i)).flatten();
        if (list.empty() || rng.below(4) == 0) continue;
        const HospitalId hj = list[rng.below(list.size())];
        if (load[idx(hj)] < inst.capacity(hj)) {
          m.assign(resident(i), hj);
          ++load[idx(hj)];
        }
      }
      REQUIRE(validate_matching(inst, m).empty());
      CHECK(is_stable(inst, ranks, m) == blocking_pairs(inst, ranks, m).empty());
    }
  }
}

TEST_CASE("validate_matching reports each breach") {
  const Instance inst = figure1();
  CHECK(validate_matching(inst, fixtures::m1()).empty());

  const Matching over = fixtures::matching(6, {{1, 1}, {2, 1}, {3, 1}});
  auto v = validate_matching(inst, over);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kCapacity);
  CHECK(v[0].hospital == h(1));

  v = validate_matching(inst, fixtures::matching(6, {{2, 3}}));
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == ViolationKind::kUnacceptable);

  v = validate_matching(inst, fixtures::matching(6, {{1, 7}}));
  REQUIRE(!v.empty());
  CHECK(v[0].kind == ViolationKind::kOutOfRange);

  v = validate_matching(inst, Matching(4));
  REQUIRE(!v.empty());
  CHECK(v[0].kind == ViolationKind::kOutOfRange);
}

TEST_CASE("without_pairs drops emptied ties and keeps the rest") {
  const Instance inst = figure1();
  const Instance cut = inst.without_pairs({{r(4), h(2)}, {r(5), h(2)}});
  CHECK(cut.num_acceptable_pairs() == 8);
  CHECK(cut.prefs(h(2)).ties.size() == 2);
  CHECK(cut.prefs(r(4)).empty());
}
