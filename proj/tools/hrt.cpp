// Command-line front end: solve, check, oracle, generate, reduce and the two
// benchmark sweeps.
//
// Exit codes: 0 success / stable, 1 usage error, 2 validation failure (bad
// input, unstable or invalid matching, violated bench contract), 3 internal
// consistency failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "hrt/bench.hpp"
#include "hrt/generator.hpp"
#include "hrt/instance_io.hpp"
#include "hrt/ip_model.hpp"
#include "hrt/oracle.hpp"
#include "hrt/preprocess.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitInternal = 3;

// Input or validation failure; maps to exit code 2.
struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

void report(const std::vector<hrt::ParseDiagnostic>& diagnostics, const std::string& file) {
  for (const auto& d : diagnostics) std::cerr << file << ": " << hrt::to_string(d) << '\n';
}

hrt::Instance load_instance(const std::string& path) {
  auto parsed = hrt::parse_instance(read_file(path));
  report(parsed.diagnostics, path);
  if (!parsed.instance) throw InvalidInput("could not parse instance " + path);
  return std::move(*parsed.instance);
}

std::string record_line(const hrt::RunRecord& record) { return hrt::to_csv({record}); }

struct SolveArgs {
  std::string instance;
  std::string output;
  std::string stats;
  std::string emit_lp;
  double time_limit = 300.0;
  bool no_reduce = false;
  bool no_warm_start = false;
  std::uint64_t seed = 0;
};

int cmd_solve(const SolveArgs& args) {
  const hrt::Instance instance = load_instance(args.instance);
  if (!args.no_reduce && instance.has_resident_ties()) {
    std::cerr << "note: residents' lists contain ties; reduction skipped\n";
  }
  hrt::PipelineOptions options;
  options.time_limit_seconds = args.time_limit;
  options.reduce = !args.no_reduce;
  options.warm_start = !args.no_warm_start;
  options.seed = args.seed;
  const auto result = hrt::solve_instance(instance, options);
  if (!args.emit_lp.empty()) write_output(args.emit_lp, hrt::export_lp(result.model));

  const auto& out = result.outcome;
  hrt::RunRecord record{args.instance, instance.num_residents(), instance.num_hospitals(),
                        0.0, args.seed, out.status, out.wall_seconds, out.objective,
                        out.initial_size, out.nodes};
  if (args.stats.empty()) {
    std::cerr << record_line(record);
  } else {
    write_output(args.stats, record_line(record));
  }
  write_output(args.output, hrt::serialize_matching(out.matching));
  return kExitOk;
}

int cmd_check(const std::string& instance_path, const std::string& matching_path) {
  const hrt::Instance instance = load_instance(instance_path);
  auto parsed = hrt::parse_assignment(read_file(matching_path), instance);
  report(parsed.diagnostics, matching_path);
  if (!parsed.matching) throw InvalidInput("could not parse matching " + matching_path);
  auto violations = parsed.violations;
  for (auto& v : hrt::validate_matching(instance, *parsed.matching)) violations.push_back(v);
  for (const auto& v : violations) std::cout << "violation: " << v.message << '\n';

  bool stable = false;
  if (violations.empty()) {
    const hrt::RankTable ranks(instance);
    const auto blocking = hrt::blocking_pairs(instance, ranks, *parsed.matching);
    for (const auto& [r, h] : blocking) {
      std::cout << "blocking pair: (" << hrt::to_string(r) << ", " << hrt::to_string(h)
                << ")\n";
    }
    stable = blocking.empty();
  }
  std::cout << "size: " << parsed.matching->size() << '\n';
  std::cout << (violations.empty() ? (stable ? "stable\n" : "unstable\n") : "invalid\n");
  return violations.empty() && stable ? kExitOk : kExitInvalid;
}

int cmd_oracle(const std::string& path, const hrt::OracleLimit& limit, bool list) {
  const hrt::Instance instance = load_instance(path);
  const auto all = hrt::enumerate_stable_matchings(instance, limit);
  std::size_t best = 0;
  for (const auto& m : all) best = std::max(best, m.size());
  std::cout << "stable matchings: " << all.size() << '\n';
  std::cout << "max size: " << best << '\n';
  if (list) {
    for (const auto& m : all) {
      std::cout << "---\n" << hrt::serialize_matching(m);
    }
  }
  return kExitOk;
}

int cmd_reduce(const std::string& path, const std::string& output,
               const std::string& deleted_path) {
  const hrt::Instance instance = load_instance(path);
  const auto reduction = hrt::reduce(instance);
  write_output(output, hrt::serialize_instance(reduction.reduced));
  const std::string deleted = hrt::serialize_pairs(reduction.deleted);
  if (deleted_path.empty()) {
    std::cerr << "# deleted pairs: " << reduction.deleted.size() << '\n' << deleted;
  } else {
    write_output(deleted_path, deleted);
  }
  return kExitOk;
}

int finish_bench(const hrt::BenchConfig& config, const std::string& csv_path, bool no_timing) {
  const auto records = hrt::run_bench(config);
  write_output(csv_path, hrt::to_csv(records, !no_timing));
  const auto cells = hrt::aggregate(records);
  std::cerr << hrt::format_report(cells);
  for (const auto& c : cells) {
    if (c.bound_violations > 0) return kExitInvalid;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum weakly stable matchings for hospitals/residents with ties"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve = app.add_subcommand("solve", "reduce, warm start and solve an instance exactly");
  solve->add_option("instance", solve_args.instance, "instance file")->required();
  solve->add_option("-o,--output", solve_args.output, "matching output (default stdout)");
  solve->add_option("--time-limit", solve_args.time_limit, "seconds")
      ->check(CLI::PositiveNumber);
  solve->add_flag("--no-reduce", solve_args.no_reduce, "skip instance reduction");
  solve->add_flag("--no-warm-start", solve_args.no_warm_start, "start the search empty");
  solve->add_option("--seed", solve_args.seed, "tie-breaking seed");
  solve->add_option("--emit-lp", solve_args.emit_lp, "write the LP model to this file");
  solve->add_option("--stats", solve_args.stats, "write the run record here (default stderr)");

  std::string check_instance, check_matching;
  auto* check = app.add_subcommand("check", "report validity, blocking pairs and size");
  check->add_option("instance", check_instance)->required();
  check->add_option("matching", check_matching)->required();

  std::string oracle_instance;
  hrt::OracleLimit limit;
  bool oracle_list = false;
  auto* oracle = app.add_subcommand("oracle", "enumerate all stable matchings");
  oracle->add_option("instance", oracle_instance)->required();
  oracle->add_option("--max-residents", limit.max_residents);
  oracle->add_option("--max-pairs", limit.max_pairs);
  oracle->add_option("--node-budget", limit.node_budget);
  oracle->add_flag("--list", oracle_list, "print every stable matching");

  std::size_t gen_n1 = 0, gen_n2 = 0, gen_posts = 0, gen_length = 5;
  double gen_td = 0.0, gen_td_residents = 0.0;
  std::uint64_t gen_seed = 0;
  std::string gen_output;
  auto* generate = app.add_subcommand(
      "generate", "random instance; defaults to n2 = floor(0.07 n1), C = n1, L = 5");
  generate->add_option("--n1", gen_n1, "residents")->required()->check(CLI::PositiveNumber);
  auto* n2_opt = generate->add_option("--n2", gen_n2, "hospitals");
  auto* posts_opt = generate->add_option("--posts", gen_posts, "total posts C");
  generate->add_option("--list-length", gen_length, "residents' list length L");
  generate->add_option("--td", gen_td, "hospital-side tie density")->check(CLI::Range(0.0, 1.0));
  generate->add_option("--td-residents", gen_td_residents, "resident-side tie density")
      ->check(CLI::Range(0.0, 1.0));
  generate->add_option("--seed", gen_seed);
  generate->add_option("-o,--output", gen_output);

  std::string reduce_instance, reduce_output, reduce_deleted;
  auto* reduce_cmd = app.add_subcommand("reduce", "remove pairs in no stable matching");
  reduce_cmd->add_option("instance", reduce_instance)->required();
  reduce_cmd->add_option("-o,--output", reduce_output, "reduced instance (default stdout)");
  reduce_cmd->add_option("--deleted", reduce_deleted, "deleted pairs (default stderr)");

  hrt::BenchConfig bench;
  std::string csv_path;
  bool no_timing = false;
  std::vector<std::size_t> td_n1s{200, 250, 300};
  double td_start = 0.0, td_end = 1.0, td_step = 0.05;
  auto* bench_td = app.add_subcommand("bench-tie-density", "sweep hospital tie density");
  bench_td->add_option("--n1", td_n1s, "instance sizes")->delimiter(',');
  bench_td->add_option("--td-start", td_start);
  bench_td->add_option("--td-end", td_end);
  bench_td->add_option("--td-step", td_step);

  std::size_t size_start = 100, size_step = 50, size_max = 300;
  double size_td = 0.85;
  auto* bench_size = app.add_subcommand("bench-size", "sweep instance size");
  bench_size->add_option("--n1-start", size_start);
  bench_size->add_option("--n1-step", size_step);
  bench_size->add_option("--n1-max", size_max);
  bench_size->add_option("--td", size_td)->check(CLI::Range(0.0, 1.0));

  for (auto* sub : {bench_td, bench_size}) {
    sub->add_option("--reps", bench.reps, "instances per cell");
    sub->add_option("--cutoff", bench.cutoff_seconds, "seconds per solve")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", bench.seed);
    sub->add_option("--workers", bench.workers, "parallel solves (0: hardware threads)");
    sub->add_option("--csv", csv_path, "run records (default stdout)");
    sub->add_flag("--no-timing", no_timing, "write time_s as 0 for reproducible output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve) return cmd_solve(solve_args);
    if (*check) return cmd_check(check_instance, check_matching);
    if (*oracle) return cmd_oracle(oracle_instance, limit, oracle_list);
    if (*reduce_cmd) return cmd_reduce(reduce_instance, reduce_output, reduce_deleted);
    if (*generate) {
      hrt::GeneratorConfig config;
      config.num_residents = gen_n1;
      config.num_hospitals = n2_opt->count() ? gen_n2 : gen_n1 * 7 / 100;
      config.total_posts = posts_opt->count() ? gen_posts : gen_n1;
      config.list_length = gen_length;
      config.hospital_tie_density = gen_td;
      config.resident_tie_density = gen_td_residents;
      config.seed = gen_seed;
      write_output(gen_output, hrt::serialize_instance(hrt::generate(config)));
      return kExitOk;
    }
    if (*bench_td) {
      bench.cells = hrt::tie_density_cells(td_n1s, td_start, td_end, td_step);
      return finish_bench(bench, csv_path, no_timing);
    }
    if (*bench_size) {
      bench.cells = hrt::size_cells(size_start, size_step, size_max, size_td);
      return finish_bench(bench, csv_path, no_timing);
    }
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const hrt::OracleLimitExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
