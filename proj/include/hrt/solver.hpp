#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "hrt/core.hpp"
#include "hrt/ip_model.hpp"

namespace hrt {

enum class SolveStatus { kOptimal, kFeasibleTimeout };

std::string_view to_string(SolveStatus status);

struct SolveOptions {
  double time_limit_seconds = 300.0;
  // Initial incumbent; must be a stable matching of the model's instance.
  std::optional<Matching> initial_matching;
  // A known attainable objective value; subtrees that cannot reach it are
  // skipped.
  std::optional<std::size_t> lower_bound;
  std::uint64_t seed = 0;
  // Without an initial matching, seed the incumbent with warm_start(seed).
  bool warm_start = true;
  // Invoked with every model-feasible vector the search produces.
  std::function<void(std::span<const std::uint8_t>)> on_feasible;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::kOptimal;
  Matching matching;
  std::size_t objective = 0;
  std::uint64_t nodes = 0;
  double wall_seconds = 0.0;
  // Upper bound on the optimum at exit; equals objective when Optimal.
  std::size_t proof_bound = 0;
  // Size of the starting incumbent (0 when the search started empty).
  std::size_t initial_size = 0;
};

// Exact maximisation of the model's objective.
//
// The search branches on the disjunction carried by a violated stability row
// (i, j): either r_i is matched to h_j or better, or h_j is filled with c_j
// residents it ranks no worse than r_i. Each node is summarised per hospital
// by an interval of admissible "worst assignee ranks"; its relaxation is a
// maximum flow with lower bounds (forced residents, forced full hospitals),
// which bounds every stable matching in the subtree. A relaxation optimum
// with no blocking pair is a stable matching of the bound's size.
//
// Throws std::invalid_argument on bad options and std::logic_error if the
// model and its instance ever disagree.
SolveOutcome solve(const IpModel& model, const SolveOptions& options = {});

// Matching with exactly the pairs whose variable is 1. Throws
// std::invalid_argument unless x is a 0/1 vector satisfying every row.
Matching extract_matching(const IpModel& model, std::span<const std::uint8_t> x);

// Per-column fixing: -1 free, 0 or 1 fixed.
using PartialFixing = std::vector<std::int8_t>;

// Maximum capacitated bipartite matching over pairs not fixed to 0 that
// contains every pair fixed to 1; stability rows are ignored. The fixing must
// respect the resident and capacity rows.
std::size_t upper_bound(const IpModel& model, std::span<const std::int8_t> fixing);

}  // namespace hrt
