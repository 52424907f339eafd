#include <algorithm>
#include <string>

#include "doctest.h"
#include "fixtures.hpp"
#include "hrt/instance_io.hpp"

using namespace hrt;
using fixtures::h;
using fixtures::r;

namespace {

bool has_error(const std::vector<ParseDiagnostic>& ds, const std::string& needle) {
  return std::any_of(ds.begin(), ds.end(), [&](const ParseDiagnostic& d) {
    return d.severity == Severity::kError && d.message.find(needle) != std::string::npos;
  });
}

std::size_t count(const std::vector<ParseDiagnostic>& ds, Severity s) {
  return static_cast<std::size_t>(
      std::count_if(ds.begin(), ds.end(), [s](const ParseDiagnostic& d) { return d.severity == s; }));
}

}  // namespace

TEST_CASE("figure 1 parses with the one-sided entry pruned") {
  const auto parsed = parse_instance(fixtures::kFigure1);
  REQUIRE(parsed.instance);
  CHECK(parsed.instance->num_acceptable_pairs() == 10);
  CHECK(count(parsed.diagnostics, Severity::kWarning) == 1);
  CHECK(count(parsed.diagnostics, Severity::kError) == 0);
  CHECK(parsed.diagnostics[0].line == 9);
  CHECK_FALSE(parsed.instance->is_acceptable(r(2), h(2)));
  CHECK(parsed.instance->capacity(h(2)) == 2);
}

TEST_CASE("minimal instance") {
  const auto parsed = parse_instance(fixtures::kSinglePair);
  REQUIRE(parsed.instance);
  CHECK(parsed.instance->num_residents() == 1);
  CHECK(parsed.instance->num_hospitals() == 1);
  CHECK(parsed.instance->num_acceptable_pairs() == 1);
  CHECK(parsed.diagnostics.empty());
}

TEST_CASE("parse errors") {
  auto errs = [](const char* text) { return parse_instance(text); };
  SUBCASE("duplicate entry") {
    const auto p = errs("1 1\nr1: h1 h1\nh1: 1: r1\n");
    CHECK_FALSE(p.instance);
    CHECK(has_error(p.diagnostics, "duplicate entry"));
  }
  SUBCASE("malformed header") {
    CHECK(has_error(errs("1\nr1: h1\nh1: 1: r1\n").diagnostics, "malformed header"));
    CHECK(has_error(errs("a b\n").diagnostics, "malformed header"));
    CHECK(has_error(errs("").diagnostics, "missing header"));
  }
  SUBCASE("non-positive sizes") {
    CHECK(has_error(errs("0 1\nh1: 1:\n").diagnostics, "positive"));
    CHECK(has_error(errs("1 -2\nr1:\n").diagnostics, "positive"));
  }
  SUBCASE("unknown ids") {
    CHECK(has_error(errs("1 1\nr1: h2\nh1: 1: r1\n").diagnostics, "unknown id"));
    CHECK(has_error(errs("1 1\nr1: h1\nh1: 1: r9\n").diagnostics, "unknown id"));
    CHECK(has_error(errs("1 1\nr2: h1\nh1: 1: r1\n").diagnostics, "unknown resident"));
  }
  SUBCASE("parentheses") {
    CHECK(has_error(errs("2 1\nr1: h1\nr2: h1\nh1: 1: ( r1 r2\n").diagnostics, "unbalanced '('"));
    CHECK(has_error(errs("2 1\nr1: h1\nr2: h1\nh1: 1: r1 r2 )\n").diagnostics, "unbalanced ')'"));
    CHECK(has_error(errs("2 1\nr1: h1\nr2: h1\nh1: 1: ( r1 ( r2 ) )\n").diagnostics, "nested"));
    CHECK(has_error(errs("1 1\nr1: h1\nh1: 1: r1 ( )\n").diagnostics, "empty tie"));
  }
  SUBCASE("missing and repeated lines") {
    CHECK(has_error(errs("2 1\nr1: h1\nh1: 1: r1\n").diagnostics, "missing line for r2"));
    CHECK(has_error(errs("1 1\nr1: h1\nr1: h1\nh1: 1: r1\n").diagnostics, "duplicate line"));
  }
  SUBCASE("bad capacity") {
    CHECK(has_error(errs("1 1\nr1: h1\nh1: -1: r1\n").diagnostics, "capacity"));
    CHECK(has_error(errs("1 1\nr1: h1\nh1: r1\n").diagnostics, "capacity"));
  }
}

TEST_CASE("comments, blank lines, CRLF and parentheses touching ids") {
  const std::string text =
      "# header comment\r\n2 1\r\n\r\nr1: h1\r\n# between\r\nr2: h1\r\nh1: 1: (r2 r1)\r\n";
  const auto parsed = parse_instance(text);
  REQUIRE(parsed.instance);
  CHECK(parsed.diagnostics.empty());
  REQUIRE(parsed.instance->prefs(h(1)).ties.size() == 1);
  CHECK(parsed.instance->prefs(h(1)).ties[0].size() == 2);
}

TEST_CASE("serialization grammar") {
  const Instance inst = fixtures::parse(
      "4 2\nr1: h1 h2\nr2: h2\nr3: h2\nr4:\nh1: 1: r1\nh2: 2: r1 ( r2 r3 )\n");
  const std::string text = serialize_instance(inst);
  CHECK(text ==
        "4 2\nr1: h1 h2\nr2: h2\nr3: h2\nr4:\nh1: 1: r1\nh2: 2: r1 ( r2 r3 )\n");
}

TEST_CASE("instance round trip") {
  const Instance fig = fixtures::figure1();
  const auto again = parse_instance(serialize_instance(fig));
  REQUIRE(again.instance);
  CHECK(*again.instance == fig);
  CHECK(RankTable(*again.instance) == RankTable(fig));
  CHECK(again.diagnostics.empty());
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = fixtures::small_instance(seed, 12, seed % 2 == 0);
    const auto back = parse_instance(serialize_instance(inst));
    REQUIRE(back.instance);
    CHECK(*back.instance == inst);
  }
}

TEST_CASE("matching text") {
  const Instance fig = fixtures::figure1();
  const auto m1 = parse_matching("r1 h1\nr2 h1\nr3 h3\nr4 h2\nr5 h3\nr6 h2\n", fig);
  REQUIRE(m1.matching);
  CHECK(*m1.matching == fixtures::m1());
  CHECK(serialize_matching(*m1.matching) == "r1 h1\nr2 h1\nr3 h3\nr4 h2\nr5 h3\nr6 h2\n");

  const auto partial = parse_matching("r1 -\r\nr2 h1\r\n", fig);
  REQUIRE(partial.matching);
  CHECK_FALSE(partial.matching->hospital_of(r(1)));
  CHECK(partial.matching->size() == 1);
  CHECK(serialize_matching(*partial.matching) == "r1 -\nr2 h1\nr3 -\nr4 -\nr5 -\nr6 -\n");

  const auto bad = parse_matching("r2 h3\n", fig);
  CHECK_FALSE(bad.matching);
  CHECK_FALSE(bad.diagnostics.empty());

  const auto over = parse_matching("r1 h1\nr2 h1\nr3 h1\n", fig);
  CHECK_FALSE(over.matching);

  CHECK_FALSE(parse_matching("r7 h1\n", fig).matching);
  CHECK_FALSE(parse_matching("r1 h9\n", fig).matching);
  CHECK_FALSE(parse_matching("r1\n", fig).matching);
}

TEST_CASE("lenient assignment parse keeps violations for reporting") {
  const Instance fig = fixtures::figure1();
  const auto p = parse_assignment("r1 h1\nr2 h1\nr3 h1\n", fig);
  REQUIRE(p.matching);
  CHECK(p.matching->size() == 3);
  const auto dup = parse_assignment("r1 h1\nr1 h2\n", fig);
  REQUIRE(dup.matching);
  CHECK(dup.violations.size() == 1);
}

TEST_CASE("matching round trip") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = fixtures::small_instance(seed, 10);
    for (const auto& m : enumerate_stable_matchings(inst, fixtures::wide_limit())) {
      const auto back = parse_matching(serialize_matching(m), inst);
      REQUIRE(back.matching);
      CHECK(*back.matching == m);
    }
  }
}

TEST_CASE("deleted pair list") {
  CHECK(serialize_pairs({{r(1), h(2)}, {r(3), h(1)}}) == "r1 h2\nr3 h1\n");
}
