#pragma once

// Text formats.
//
// Instance:
//   <n1> <n2>
//   r<i>: <groups>            (n1 lines)
//   h<j>: <capacity>: <groups> (n2 lines)
// A group is a single id or "( id id ... )" for a tie. Lines starting with '#'
// are comments. One-sided entries are pruned with a warning.
//
// Matching: one line per resident, "r<i> h<j>" or "r<i> -".

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hrt/core.hpp"

namespace hrt {

enum class Severity { kWarning, kError };

struct ParseDiagnostic {
  int line = 0;
  Severity severity = Severity::kError;
  std::string message;
};

std::string to_string(const ParseDiagnostic& d);

struct InstanceParse {
  std::optional<Instance> instance;  // empty iff an error was reported
  std::vector<ParseDiagnostic> diagnostics;
};

InstanceParse parse_instance(std::string_view text);
std::string serialize_instance(const Instance& instance);

// Syntax and id checks only. Duplicate resident lines are reported as
// violations; later lines override earlier ones.
struct AssignmentParse {
  std::optional<Matching> matching;
  std::vector<ParseDiagnostic> diagnostics;
  std::vector<Violation> violations;
};
AssignmentParse parse_assignment(std::string_view text,
                                 const Instance& instance);

// parse_assignment followed by validate_matching; any violation becomes an
// error diagnostic and no matching is returned.
struct MatchingParse {
  std::optional<Matching> matching;
  std::vector<ParseDiagnostic> diagnostics;
};
MatchingParse parse_matching(std::string_view text, const Instance& instance);

std::string serialize_matching(const Matching& matching);

// Deleted pairs, one "r<i> h<j>" per line.
std::string serialize_pairs(const std::vector<Pair>& pairs);

}  // namespace hrt
