#pragma once

// Solve pipeline and experiment harness behind the command-line tool.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hrt/core.hpp"
#include "hrt/ip_model.hpp"
#include "hrt/preprocess.hpp"
#include "hrt/solver.hpp"

namespace hrt {

struct PipelineOptions {
  double time_limit_seconds = 300.0;
  bool reduce = true;
  bool warm_start = true;
  std::uint64_t seed = 0;
};

struct PipelineResult {
  // Set when the reduction ran; it is skipped when residents have ties.
  std::optional<Reduction> reduction;
  IpModel model;  // built over the reduced instance when reduction ran
  SolveOutcome outcome;
};

// reduce -> build model -> solve (warm started) -> decode. The returned
// matching is re-checked against the original instance and, when present,
// the reduced one; a failure there throws std::logic_error.
PipelineResult solve_instance(const Instance& instance, const PipelineOptions& options);

struct RunRecord {
  std::string instance_id;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  double td = 0.0;
  std::uint64_t seed = 0;
  SolveStatus status = SolveStatus::kOptimal;
  double time_s = 0.0;
  std::size_t size = 0;
  std::size_t warm_size = 0;
  std::uint64_t nodes = 0;
};

struct BenchCell {
  std::size_t n1;
  double td;
};

struct BenchConfig {
  std::vector<BenchCell> cells;
  std::size_t reps = 100;
  double cutoff_seconds = 300.0;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0: one per hardware thread
};

// Tie-density sweep: every n1 crossed with start, start+step, ..., end.
std::vector<BenchCell> tie_density_cells(const std::vector<std::size_t>& n1s,
                                         double td_start, double td_end, double td_step);
// Size sweep at fixed tie density: start, start+step, ..., <= max.
std::vector<BenchCell> size_cells(std::size_t n1_start, std::size_t n1_step,
                                  std::size_t n1_max, double td);

// Seed of repetition `rep` in a cell; independent of worker scheduling.
std::uint64_t instance_seed(std::uint64_t base, const BenchCell& cell, std::size_t rep);
std::string instance_id(const BenchCell& cell, std::size_t rep);

// Generates reps sfas_like instances per cell and solves each through
// solve_instance. Records come back sorted by instance_id.
std::vector<RunRecord> run_bench(const BenchConfig& config);

struct CellSummary {
  std::size_t n1 = 0;
  double td = 0.0;
  std::size_t count = 0;
  std::size_t solved = 0;
  double percent_solved = 0.0;
  // Over solved runs only.
  double mean_time = 0.0;
  double median_time = 0.0;
  double mean_size = 0.0;
  std::size_t max_size = 0;
  std::size_t min_size = 0;
  // Runs whose objective fell below the warm start or above n1.
  std::size_t bound_violations = 0;
  std::optional<double> reference_percent;
};

std::vector<CellSummary> aggregate(const std::vector<RunRecord>& records);

// Published solve rates within 300 s for n1 in {200, 250, 300}; 100% for the
// tie densities on the 5% grid that the table omits.
std::optional<double> reference_solve_rate(std::size_t n1, double td);

// Header instance_id,n1,n2,td,seed,status,time_s,size,warm_size,nodes. With
// include_timing false every time_s is written as 0 so the file is
// reproducible byte for byte.
std::string to_csv(const std::vector<RunRecord>& records, bool include_timing = true);
std::string format_report(const std::vector<CellSummary>& cells);

}  // namespace hrt
