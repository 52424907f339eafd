#include "doctest.h"
#include "fixtures.hpp"
#include "hrt/heuristics.hpp"
#include "hrt/preprocess.hpp"
#include "hrt/solver.hpp"

using namespace hrt;
using fixtures::h;
using fixtures::r;

namespace {

IpModel model_of(const Instance& inst) { return build_model(inst, RankTable(inst)); }

}  // namespace

TEST_CASE("figure 1 solves to six") {
  const IpModel m = model_of(fixtures::figure1());
  const SolveOutcome out = solve(m);
  CHECK(out.status == SolveStatus::kOptimal);
  CHECK(out.objective == 6);
  CHECK(out.proof_bound == 6);
  CHECK(out.matching == fixtures::m1());
}

TEST_CASE("single pair solves to one") {
  const SolveOutcome out = solve(model_of(fixtures::parse(fixtures::kSinglePair)));
  CHECK(out.status == SolveStatus::kOptimal);
  CHECK(out.objective == 1);
}

TEST_CASE("b-matching bound examples") {
  const IpModel m = model_of(fixtures::figure1());
  PartialFixing free(m.num_columns(), -1);
  CHECK(upper_bound(m, free) == 6);

  PartialFixing fixed(m.num_columns(), 0);
  for (const auto& [ri, hj] : fixtures::m1().pairs()) {
    fixed[static_cast<std::size_t>(m.column(ri, hj))] = 1;
  }
  CHECK(upper_bound(m, fixed) == 6);

  PartialFixing r1_out = free;
  r1_out[static_cast<std::size_t>(m.column(r(1), h(1)))] = 0;
  r1_out[static_cast<std::size_t>(m.column(r(1), h(2)))] = 0;
  CHECK(upper_bound(m, r1_out) <= 5);

  PartialFixing clash = free;
  clash[static_cast<std::size_t>(m.column(r(1), h(1)))] = 1;
  clash[static_cast<std::size_t>(m.column(r(1), h(2)))] = 1;
  CHECK_THROWS_AS(upper_bound(m, clash), std::invalid_argument);
}

TEST_CASE("b-matching bound never undercuts the optimum") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Instance inst = fixtures::small_instance(seed + 40, 10, seed % 2 == 0);
    const IpModel m = model_of(inst);
    const PartialFixing free(m.num_columns(), -1);
    CHECK(upper_bound(m, free) >= max_stable_size(inst, fixtures::wide_limit()));
  }
}

TEST_CASE("solver matches the oracle on small instances") {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Instance inst = fixtures::small_instance(seed + 900, 10, seed % 4 == 0);
    SolveOptions opts;
    opts.seed = seed;
    opts.warm_start = seed % 2 == 0;
    const SolveOutcome out = solve(model_of(inst), opts);
    REQUIRE(out.status == SolveStatus::kOptimal);
    CHECK_MESSAGE(out.objective == max_stable_size(inst, fixtures::wide_limit()), "seed " << seed);
    CHECK(out.objective == out.matching.size());
    CHECK(is_stable(inst, RankTable(inst), out.matching));
  }
}

TEST_CASE("every vector reported during search is feasible and stable") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GeneratorConfig c{40, 5, 40, 4, 0.0, 0.8, seed};
    const Instance inst = generate(c);
    const IpModel m = model_of(inst);
    const RankTable ranks(inst);
    std::size_t seen = 0;
    std::size_t last = 0;
    SolveOptions opts;
    opts.seed = seed;
    opts.on_feasible = [&](std::span<const std::uint8_t> x) {
      ++seen;
      CHECK(m.is_feasible(x));
      const Matching mm = extract_matching(m, x);
      CHECK(is_stable(inst, ranks, mm));
      last = std::max(last, mm.size());
    };
    const SolveOutcome out = solve(m, opts);
    CHECK(seen >= 1);
    CHECK(out.objective == last);
    CHECK(out.objective >= out.initial_size);
  }
}

TEST_CASE("same seed gives the same search") {
  const Instance inst = generate(sfas_like(100, 0.85, 5));
  const IpModel m = model_of(inst);
  SolveOptions opts;
  opts.seed = 11;
  const SolveOutcome a = solve(m, opts);
  const SolveOutcome b = solve(m, opts);
  CHECK(a.nodes == b.nodes);
  CHECK(a.matching == b.matching);
  opts.seed = 12;
  const SolveOutcome c = solve(m, opts);
  CHECK(c.objective == a.objective);
}

TEST_CASE("initial matching and lower bound") {
  const IpModel m = model_of(fixtures::figure1());
  SolveOptions opts;
  opts.initial_matching = fixtures::m0();
  SolveOutcome out = solve(m, opts);
  CHECK(out.initial_size == 5);
  CHECK(out.objective == 6);

  opts.initial_matching = fixtures::matching(6, {{1, 2}});
  CHECK_THROWS_AS(solve(m, opts), std::invalid_argument);

  opts = {};
  opts.lower_bound = 6;
  CHECK(solve(m, opts).objective == 6);
  opts.lower_bound = 7;
  CHECK_THROWS_AS(solve(m, opts), std::logic_error);

  opts = {};
  opts.time_limit_seconds = 0.0;
  CHECK_THROWS_AS(solve(m, opts), std::invalid_argument);
}

TEST_CASE("time limit returns the incumbent with a valid bound") {
  const Instance inst = generate(sfas_like(300, 0.85, 3));
  const IpModel m = model_of(inst);
  SolveOptions opts;
  opts.time_limit_seconds = 1e-6;
  const SolveOutcome out = solve(m, opts);
  CHECK(out.status == SolveStatus::kFeasibleTimeout);
  CHECK(out.objective == out.initial_size);
  CHECK(out.proof_bound >= out.objective);
  CHECK(out.proof_bound <= inst.num_residents());
  CHECK(is_stable(inst, RankTable(inst), out.matching));

  opts.warm_start = false;
  const SolveOutcome cold = solve(m, opts);
  CHECK(is_stable(inst, RankTable(inst), cold.matching));
}

TEST_CASE("extract_matching rejects bad vectors") {
  const IpModel m = model_of(fixtures::parse(fixtures::kSinglePair));
  const std::vector<std::uint8_t> zero{0}, two{2}, one{1}, wide{1, 0};
  CHECK_THROWS_AS(extract_matching(m, zero), std::invalid_argument);
  CHECK_THROWS_AS(extract_matching(m, two), std::invalid_argument);
  CHECK_THROWS_AS(extract_matching(m, wide), std::invalid_argument);
  CHECK(extract_matching(m, one) == fixtures::matching(1, {{1, 1}}));

  const IpModel fig = model_of(fixtures::figure1());
  CHECK(extract_matching(fig, fig.encode(fixtures::m1())) == fixtures::m1());
}

TEST_CASE("solving the reduced model gives the same optimum") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = fixtures::small_instance(seed + 7000, 12);
    const Reduction red = reduce(inst);
    CHECK(solve(model_of(red.reduced)).objective == solve(model_of(inst)).objective);
  }
}
