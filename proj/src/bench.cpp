#include "hrt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "hrt/generator.hpp"
#include "hrt/random.hpp"

namespace hrt {

PipelineResult solve_instance(const Instance& instance, const PipelineOptions& options) {
  std::optional<Reduction> reduction;
  if (options.reduce && !instance.has_resident_ties()) reduction = reduce(instance);
  const Instance& working = reduction ? reduction->reduced : instance;
  const RankTable working_ranks(working);
  IpModel model = build_model(working, working_ranks);

  SolveOptions solve_options;
  solve_options.time_limit_seconds = options.time_limit_seconds;
  solve_options.seed = options.seed;
  solve_options.warm_start = options.warm_start;
  SolveOutcome outcome = solve(model, solve_options);

  const RankTable original_ranks(instance);
  if (!validate_matching(instance, outcome.matching).empty() ||
      !is_stable(instance, original_ranks, outcome.matching)) {
    throw std::logic_error("solver output is not stable in the original instance");
  }
  if (reduction && (!validate_matching(working, outcome.matching).empty() ||
                    !is_stable(working, working_ranks, outcome.matching))) {
    throw std::logic_error("solver output is not stable in the reduced instance");
  }
  return {std::move(reduction), std::move(model), std::move(outcome)};
}

std::vector<BenchCell> tie_density_cells(const std::vector<std::size_t>& n1s,
                                         double td_start, double td_end, double td_step) {
  if (!(td_step > 0.0) || td_start > td_end) {
    throw std::invalid_argument("tie density sweep needs start <= end and step > 0");
  }
  std::vector<BenchCell> cells;
  for (std::size_t n1 : n1s) {
    // Integer step count avoids drift from repeated addition.
    const auto steps = static_cast<long>(std::floor((td_end - td_start) / td_step + 1e-9));
    for (long k = 0; k <= steps; ++k) {
      const double td = std::round((td_start + static_cast<double>(k) * td_step) * 1e6) / 1e6;
      cells.push_back({n1, std::min(td, 1.0)});
    }
  }
  return cells;
}

std::vector<BenchCell> size_cells(std::size_t n1_start, std::size_t n1_step,
                                  std::size_t n1_max, double td) {
  if (n1_step == 0 || n1_start > n1_max) {
    throw std::invalid_argument("size sweep needs start <= max and step > 0");
  }
  std::vector<BenchCell> cells;
  for (std::size_t n1 = n1_start; n1 <= n1_max; n1 += n1_step) cells.push_back({n1, td});
  return cells;
}

namespace {

long td_permille(double td) { return std::lround(td * 1000.0); }

}  // namespace

std::uint64_t instance_seed(std::uint64_t base, const BenchCell& cell, std::size_t rep) {
  const std::uint64_t cell_key =
      static_cast<std::uint64_t>(cell.n1) * 10007u + static_cast<std::uint64_t>(td_permille(cell.td));
  return mix_seed(mix_seed(base, cell_key), rep);
}

std::string instance_id(const BenchCell& cell, std::size_t rep) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "n%05zu-td%04ld-r%06zu", cell.n1, td_permille(cell.td), rep);
  return buf;
}

std::vector<RunRecord> run_bench(const BenchConfig& config) {
  struct Job {
    BenchCell cell;
    std::size_t rep;
  };
  std::vector<Job> jobs;
  for (const auto& cell : config.cells) {
    sfas_like(cell.n1, cell.td, 0);  // validate before spawning work
    for (std::size_t rep = 0; rep < config.reps; ++rep) jobs.push_back({cell, rep});
  }
  std::vector<RunRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) {
      try {
        const auto& [cell, rep] = jobs[k];
        const std::uint64_t seed = instance_seed(config.seed, cell, rep);
        const Instance instance = generate(sfas_like(cell.n1, cell.td, seed));
        PipelineOptions options;
        options.time_limit_seconds = config.cutoff_seconds;
        options.seed = seed;
        const auto result = solve_instance(instance, options);
        const auto& out = result.outcome;
        records[k] = {instance_id(cell, rep), cell.n1, instance.num_hospitals(), cell.td,
                      seed, out.status, out.wall_seconds, out.objective,
                      out.initial_size, out.nodes};
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = jobs.size();
      }
    }
  };
  unsigned workers = config.workers ? config.workers : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1))));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  std::sort(records.begin(), records.end(),
            [](const RunRecord& a, const RunRecord& b) { return a.instance_id < b.instance_id; });
  return records;
}

std::vector<CellSummary> aggregate(const std::vector<RunRecord>& records) {
  std::map<std::pair<std::size_t, long>, std::vector<const RunRecord*>> by_cell;
  for (const auto& r : records) by_cell[{r.n1, td_permille(r.td)}].push_back(&r);

  std::vector<CellSummary> out;
  for (const auto& [key, runs] : by_cell) {
    CellSummary s;
    s.n1 = key.first;
    s.td = runs.front()->td;
    s.count = runs.size();
    std::vector<double> times;
    double size_sum = 0.0;
    for (const RunRecord* r : runs) {
      if (r->size < r->warm_size || r->size > r->n1) ++s.bound_violations;
      if (r->status != SolveStatus::kOptimal) continue;
      ++s.solved;
      times.push_back(r->time_s);
      size_sum += static_cast<double>(r->size);
      s.max_size = s.solved == 1 ? r->size : std::max(s.max_size, r->size);
      s.min_size = s.solved == 1 ? r->size : std::min(s.min_size, r->size);
    }
    s.percent_solved = 100.0 * static_cast<double>(s.solved) / static_cast<double>(s.count);
    if (!times.empty()) {
      std::sort(times.begin(), times.end());
      double total = 0.0;
      for (double t : times) total += t;
      s.mean_time = total / static_cast<double>(times.size());
      const std::size_t mid = times.size() / 2;
      s.median_time = times.size() % 2 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
      s.mean_size = size_sum / static_cast<double>(s.solved);
    }
    s.reference_percent = reference_solve_rate(s.n1, s.td);
    out.push_back(s);
  }
  return out;
}

std::optional<double> reference_solve_rate(std::size_t n1, double td) {
  static const std::map<long, std::map<std::size_t, double>> kTable = {
      {750, {{200, 100.00}, {250, 100.00}, {300, 99.85}}},
      {800, {{200, 99.98}, {250, 99.88}, {300, 99.39}}},
      {850, {{200, 99.90}, {250, 99.29}, {300, 97.76}}},
      {900, {{200, 99.70}, {250, 99.28}, {300, 98.60}}},
      {950, {{200, 99.99}, {250, 100.00}, {300, 100.00}}},
  };
  if (n1 != 200 && n1 != 250 && n1 != 300) return std::nullopt;
  const long key = td_permille(td);
  if (key < 0 || key > 1000 || key % 50 != 0) return std::nullopt;
  if (const auto row = kTable.find(key); row != kTable.end()) return row->second.at(n1);
  return 100.0;
}

std::string to_csv(const std::vector<RunRecord>& records, bool include_timing) {
  std::ostringstream out;
  out << "instance_id,n1,n2,td,seed,status,time_s,size,warm_size,nodes\n";
  char buf[64];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%.2f", r.td);
    out << r.instance_id << ',' << r.n1 << ',' << r.n2 << ',' << buf << ',' << r.seed << ','
        << to_string(r.status) << ',';
    std::snprintf(buf, sizeof buf, "%.6f", include_timing ? r.time_s : 0.0);
    out << buf << ',' << r.size << ',' << r.warm_size << ',' << r.nodes << '\n';
  }
  return out.str();
}

std::string format_report(const std::vector<CellSummary>& cells) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%6s %5s %6s %8s %8s %10s %10s %8s %6s %6s %8s\n", "n1",
                "td", "count", "solved%", "ref%", "mean_s", "median_s", "mean|M|", "min|M|",
                "max|M|", "bad_lb");
  out << buf;
  for (const auto& c : cells) {
    char ref[16] = "-";
    if (c.reference_percent) std::snprintf(ref, sizeof ref, "%.2f", *c.reference_percent);
    std::snprintf(buf, sizeof buf, "%6zu %5.2f %6zu %8.2f %8s %10.4f %10.4f %8.2f %6zu %6zu %8zu\n",
                  c.n1, c.td, c.count, c.percent_solved, ref, c.mean_time, c.median_time,
                  c.mean_size, c.min_size, c.max_size, c.bound_violations);
    out << buf;
  }
  return out.str();
}

}  // namespace hrt
