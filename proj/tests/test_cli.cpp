#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hrt/bench.hpp"
#include "hrt/generator.hpp"
#include "hrt/instance_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Workdir {
  fs::path path;
  Workdir() {
    path = fs::temp_directory_path() / ("hrt_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~Workdir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name), std::ios::binary) << text;
    return file(name);
  }
  std::string read(const std::string& name) const {
    std::ifstream in(file(name), std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }
};

// Runs the CLI with stdout and stderr captured in the work directory.
int run(const Workdir& w, const std::string& args) {
  const std::string cmd = std::string(HRT_CLI) + " " + args + " >" + w.file("out") + " 2>" +
                          w.file("err");
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("cli solve and check on figure 1") {
  Workdir w;
  const std::string inst = w.write("fig.txt", fixtures::kFigure1);
  REQUIRE(run(w, "solve " + inst + " -o " + w.file("m.txt") + " --stats " + w.file("s.csv") +
                     " --emit-lp " + w.file("model.lp")) == 0);
  const std::string matching = w.read("m.txt");
  CHECK(matching == "r1 h1\nr2 h1\nr3 h3\nr4 h2\nr5 h3\nr6 h2\n");
  CHECK(w.read("s.csv").find(",Optimal,") != std::string::npos);

  const auto res = hrt::solve_instance(fixtures::figure1(), {});
  CHECK(w.read("model.lp") == hrt::export_lp(res.model));

  CHECK(run(w, "check " + inst + " " + w.file("m.txt")) == 0);
  CHECK(w.read("out").find("size: 6") != std::string::npos);
  CHECK(w.read("out").find("stable") != std::string::npos);

  w.write("bad.txt", "r1 h2\n");
  CHECK(run(w, "check " + inst + " " + w.file("bad.txt")) == 2);
  CHECK(w.read("out").find("blocking pair: (r1, h1)") != std::string::npos);

  w.write("over.txt", "r1 h1\nr2 h1\nr3 h1\n");
  CHECK(run(w, "check " + inst + " " + w.file("over.txt")) == 2);
  CHECK(w.read("out").find("violation") != std::string::npos);
}

TEST_CASE("cli oracle, reduce and generate") {
  Workdir w;
  const std::string inst = w.write("fig.txt", fixtures::kFigure1);
  REQUIRE(run(w, "oracle " + inst) == 0);
  CHECK(w.read("out").find("max size: 6") != std::string::npos);

  REQUIRE(run(w, "reduce " + inst + " --deleted " + w.file("del.txt")) == 0);
  CHECK(w.read("del.txt") == "r1 h2\nr3 h1\nr6 h1\n");
  const auto reduced = hrt::parse_instance(w.read("out"));
  REQUIRE(reduced.instance);
  CHECK(reduced.instance->num_acceptable_pairs() == 7);

  REQUIRE(run(w, "generate --n1 300 --td 0.85 --seed 7 -o " + w.file("g1.txt")) == 0);
  REQUIRE(run(w, "generate --n1 300 --td 0.85 --seed 7 -o " + w.file("g2.txt")) == 0);
  CHECK(w.read("g1.txt") == w.read("g2.txt"));
  CHECK(w.read("g1.txt") ==
        hrt::serialize_instance(hrt::generate(hrt::sfas_like(300, 0.85, 7))));
}

TEST_CASE("cli solve under a tiny time limit keeps a stable matching") {
  Workdir w;
  const std::string inst =
      w.write("big.txt", hrt::serialize_instance(hrt::generate(hrt::sfas_like(300, 0.85, 3))));
  REQUIRE(run(w, "solve " + inst + " --time-limit 0.000001 -o " + w.file("m.txt")) == 0);
  CHECK(w.read("err").find(",FeasibleTimeout,") != std::string::npos);
  CHECK(run(w, "check " + inst + " " + w.file("m.txt")) == 0);
}

TEST_CASE("cli bench csv is reproducible without timing") {
  Workdir w;
  const std::string args =
      "bench-tie-density --n1 100 --td-start 0.8 --td-end 0.9 --td-step 0.1 --reps 2 "
      "--cutoff 30 --seed 5 --no-timing --csv ";
  REQUIRE(run(w, args + w.file("a.csv")) == 0);
  REQUIRE(run(w, args + w.file("b.csv")) == 0);
  CHECK(w.read("a.csv") == w.read("b.csv"));
  CHECK(w.read("err").find("solved%") != std::string::npos);
  REQUIRE(run(w, "bench-size --n1-start 100 --n1-step 50 --n1-max 150 --reps 1 --csv " +
                     w.file("c.csv")) == 0);
  const std::string sizes = w.read("c.csv");
  CHECK(std::count(sizes.begin(), sizes.end(), '\n') == 3);
}

TEST_CASE("cli exit codes") {
  Workdir w;
  CHECK(run(w, "") == 1);
  CHECK(run(w, "solve") == 1);
  CHECK(run(w, "frobnicate") == 1);
  const std::string broken = w.write("broken.txt", "1 1\nr1: h1 h1\nh1: 1: r1\n");
  CHECK(run(w, "solve " + broken) == 2);
  CHECK(w.read("err").find("duplicate entry") != std::string::npos);
  CHECK(run(w, "solve " + w.file("missing.txt")) == 2);
  const std::string big =
      w.write("big.txt", hrt::serialize_instance(hrt::generate(hrt::sfas_like(100, 0.5, 1))));
  CHECK(run(w, "oracle " + big) == 2);
}

TEST_CASE("cli notes skipped reduction") {
  Workdir w;
  const std::string inst =
      w.write("tied.txt", "2 2\nr1: ( h1 h2 )\nr2: h1\nh1: 1: r1 r2\nh2: 1: r1\n");
  REQUIRE(run(w, "solve " + inst) == 0);
  CHECK(w.read("err").find("reduction skipped") != std::string::npos);
  CHECK(w.read("out") == "r1 h2\nr2 h1\n");
}
