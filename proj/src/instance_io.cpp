#include "hrt/instance_io.hpp"

#include <charconv>
#include <sstream>

namespace hrt {

std::string to_string(const ParseDiagnostic& d) {
  return "line " + std::to_string(d.line) + ": " +
         (d.severity == Severity::kError ? "error: " : "warning: ") + d.message;
}

namespace {

struct Line {
  int number;
  std::string_view text;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Non-blank, non-comment lines with CR stripped.
std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> out;
  int number = 0;
  while (!text.empty() || number == 0) {
    ++number;
    const auto nl = text.find('\n');
    std::string_view raw = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    const std::string_view t = trim(raw);
    if (!t.empty() && t.front() != '#') out.push_back({number, t});
    if (nl == std::string_view::npos) break;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    const std::size_t start = i;
    while (i < s.size() && !is_space(s[i])) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

std::optional<long long> parse_int(std::string_view s) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

// Parses "<prefix><k>" with 1 <= k <= bound into a zero-based index.
std::optional<std::size_t> parse_agent(std::string_view token, char prefix,
                                       std::size_t bound) {
  if (token.size() < 2 || token.front() != prefix) return std::nullopt;
  for (char c : token.substr(1)) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  const auto k = parse_int(token.substr(1));
  if (!k || *k < 1 || static_cast<unsigned long long>(*k) > bound) {
    return std::nullopt;
  }
  return static_cast<std::size_t>(*k - 1);
}

class Diagnostics {
 public:
  void error(int line, std::string msg) {
    items_.push_back({line, Severity::kError, std::move(msg)});
    failed_ = true;
  }
  void warning(int line, std::string msg) {
    items_.push_back({line, Severity::kWarning, std::move(msg)});
  }
  bool failed() const { return failed_; }
  std::vector<ParseDiagnostic> take() { return std::move(items_); }

 private:
  std::vector<ParseDiagnostic> items_;
  bool failed_ = false;
};

// Parses the groups of one list. Parentheses may touch ids.
template <typename Id>
std::optional<PreferenceList<Id>> parse_groups(std::string_view s, char prefix,
                                               std::size_t bound, int line,
                                               Diagnostics& diag) {
  std::vector<std::string_view> tokens;
  for (std::string_view word : split_ws(s)) {
    std::size_t start = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (word[i] == '(' || word[i] == ')') {
        if (i > start) tokens.push_back(word.substr(start, i - start));
        tokens.push_back(word.substr(i, 1));
        start = i + 1;
      }
    }
    if (start < word.size()) tokens.push_back(word.substr(start));
  }

  PreferenceList<Id> list;
  std::vector<char> seen(bound, 0);
  bool in_tie = false;
  bool ok = true;
  for (std::string_view tok : tokens) {
    if (tok == "(") {
      if (in_tie) {
        diag.error(line, "nested '(' in preference list");
        return std::nullopt;
      }
      in_tie = true;
      list.ties.emplace_back();
      continue;
    }
    if (tok == ")") {
      if (!in_tie) {
        diag.error(line, "unbalanced ')' in preference list");
        return std::nullopt;
      }
      if (list.ties.back().empty()) {
        diag.error(line, "empty tie");
        return std::nullopt;
      }
      in_tie = false;
      continue;
    }
    const auto agent = parse_agent(tok, prefix, bound);
    if (!agent) {
      diag.error(line, "unknown id '" + std::string(tok) + "'");
      ok = false;
      continue;
    }
    if (seen[*agent]) {
      diag.error(line, "duplicate entry '" + std::string(tok) + "'");
      ok = false;
      continue;
    }
    seen[*agent] = 1;
    if (in_tie) {
      list.ties.back().push_back(static_cast<Id>(*agent));
    } else {
      list.ties.push_back({static_cast<Id>(*agent)});
    }
  }
  if (in_tie) {
    diag.error(line, "unbalanced '(' in preference list");
    return std::nullopt;
  }
  if (!ok) return std::nullopt;
  return list;
}

template <typename Id>
void write_list(std::ostringstream& out, const PreferenceList<Id>& list) {
  for (const auto& tie : list.ties) {
    if (tie.size() == 1) {
      out << ' ' << to_string(tie.front());
    } else {
      out << " (";
      for (Id id : tie) out << ' ' << to_string(id);
      out << " )";
    }
  }
}

}  // namespace

InstanceParse parse_instance(std::string_view text) {
  Diagnostics diag;
  InstanceParse result;
  const auto lines = content_lines(text);
  if (lines.empty()) {
    diag.error(0, "missing header '<n1> <n2>'");
    result.diagnostics = diag.take();
    return result;
  }
  const auto header = split_ws(lines.front().text);
  std::optional<long long> n1, n2;
  if (header.size() == 2) {
    n1 = parse_int(header[0]);
    n2 = parse_int(header[1]);
  }
  if (!n1 || !n2) {
    diag.error(lines.front().number, "malformed header, expected '<n1> <n2>'");
    result.diagnostics = diag.take();
    return result;
  }
  if (*n1 <= 0 || *n2 <= 0) {
    diag.error(lines.front().number, "n1 and n2 must be positive");
    result.diagnostics = diag.take();
    return result;
  }
  const auto num_r = static_cast<std::size_t>(*n1);
  const auto num_h = static_cast<std::size_t>(*n2);

  std::vector<std::optional<ResidentPrefs>> residents(num_r);
  std::vector<std::optional<HospitalSpec>> hospitals(num_h);
  std::vector<int> resident_line(num_r, 0), hospital_line(num_h, 0);

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto [number, body] = lines[k];
    const auto colon = body.find(':');
    if (colon == std::string_view::npos) {
      diag.error(number, "expected 'r<i>:' or 'h<j>: <capacity>:'");
      continue;
    }
    const std::string_view head = trim(body.substr(0, colon));
    std::string_view rest = body.substr(colon + 1);
    if (!head.empty() && head.front() == 'r') {
      const auto i = parse_agent(head, 'r', num_r);
      if (!i) {
        diag.error(number, "unknown resident '" + std::string(head) + "'");
        continue;
      }
      if (resident_line[*i] != 0) {
        diag.error(number, "duplicate line for " + std::string(head));
        continue;
      }
      resident_line[*i] = number;
      residents[*i] = parse_groups<HospitalId>(rest, 'h', num_h, number, diag);
    } else if (!head.empty() && head.front() == 'h') {
      const auto j = parse_agent(head, 'h', num_h);
      if (!j) {
        diag.error(number, "unknown hospital '" + std::string(head) + "'");
        continue;
      }
      if (hospital_line[*j] != 0) {
        diag.error(number, "duplicate line for " + std::string(head));
        continue;
      }
      hospital_line[*j] = number;
      const auto colon2 = rest.find(':');
      const auto cap = colon2 == std::string_view::npos
                           ? std::nullopt
                           : parse_int(trim(rest.substr(0, colon2)));
      if (!cap || *cap < 0) {
        diag.error(number, "expected non-negative capacity followed by ':'");
        continue;
      }
      rest = rest.substr(colon2 + 1);
      auto prefs = parse_groups<ResidentId>(rest, 'r', num_r, number, diag);
      if (prefs) hospitals[*j] = HospitalSpec{static_cast<int>(*cap), std::move(*prefs)};
    } else {
      diag.error(number, "unexpected line head '" + std::string(head) + "'");
    }
  }
  for (std::size_t i = 0; i < num_r; ++i) {
    if (resident_line[i] == 0) diag.error(0, "missing line for " + to_string(resident(i)));
  }
  for (std::size_t j = 0; j < num_h; ++j) {
    if (hospital_line[j] == 0) diag.error(0, "missing line for " + to_string(hospital(j)));
  }
  if (diag.failed()) {
    result.diagnostics = diag.take();
    return result;
  }

  // Mutual acceptability: drop one-sided entries.
  std::vector<unsigned char> listed(num_r * num_h, 0);
  for (std::size_t i = 0; i < num_r; ++i) {
    for (HospitalId h : residents[i]->flatten()) listed[i * num_h + idx(h)] |= 1;
  }
  for (std::size_t j = 0; j < num_h; ++j) {
    for (ResidentId r : hospitals[j]->prefs.flatten()) listed[idx(r) * num_h + j] |= 2;
  }
  std::vector<Pair> one_sided;
  for (std::size_t i = 0; i < num_r; ++i) {
    for (HospitalId h : residents[i]->flatten()) {
      if (listed[i * num_h + idx(h)] != 3) {
        diag.warning(resident_line[i], to_string(h) + " does not rank " +
                                           to_string(resident(i)) + "; entry dropped");
      }
    }
  }
  for (std::size_t j = 0; j < num_h; ++j) {
    for (ResidentId r : hospitals[j]->prefs.flatten()) {
      if (listed[idx(r) * num_h + j] != 3) {
        diag.warning(hospital_line[j], to_string(r) + " does not rank " +
                                           to_string(hospital(j)) + "; entry dropped");
      }
    }
  }
  auto keep_mutual = [&](auto& list, auto is_mutual) {
    using List = std::decay_t<decltype(list)>;
    List out;
    for (const auto& tie : list.ties) {
      typename List::Tie kept;
      for (auto id : tie) {
        if (is_mutual(id)) kept.push_back(id);
      }
      if (!kept.empty()) out.ties.push_back(std::move(kept));
    }
    list = std::move(out);
  };
  std::vector<ResidentPrefs> rs;
  std::vector<HospitalSpec> hs;
  for (std::size_t i = 0; i < num_r; ++i) {
    keep_mutual(*residents[i], [&](HospitalId h) { return listed[i * num_h + idx(h)] == 3; });
    rs.push_back(std::move(*residents[i]));
  }
  for (std::size_t j = 0; j < num_h; ++j) {
    keep_mutual(hospitals[j]->prefs, [&](ResidentId r) { return listed[idx(r) * num_h + j] == 3; });
    hs.push_back(std::move(*hospitals[j]));
  }
  result.instance.emplace(std::move(rs), std::move(hs));
  result.diagnostics = diag.take();
  return result;
}

std::string serialize_instance(const Instance& instance) {
  std::ostringstream out;
  out << instance.num_residents() << ' ' << instance.num_hospitals() << '\n';
  for (std::size_t i = 0; i < instance.num_residents(); ++i) {
    out << to_string(resident(i)) << ':';
    write_list(out, instance.prefs(resident(i)));
    out << '\n';
  }
  for (std::size_t j = 0; j < instance.num_hospitals(); ++j) {
    out << to_string(hospital(j)) << ": " << instance.capacity(hospital(j)) << ':';
    write_list(out, instance.prefs(hospital(j)));
    out << '\n';
  }
  return out.str();
}

AssignmentParse parse_assignment(std::string_view text, const Instance& instance) {
  Diagnostics diag;
  AssignmentParse result;
  Matching matching(instance.num_residents());
  std::vector<int> seen_line(instance.num_residents(), 0);
  for (const auto& [number, body] : content_lines(text)) {
    const auto tokens = split_ws(body);
    if (tokens.size() != 2) {
      diag.error(number, "expected 'r<i> h<j>' or 'r<i> -'");
      continue;
    }
    const auto i = parse_agent(tokens[0], 'r', instance.num_residents());
    if (!i) {
      diag.error(number, "unknown resident '" + std::string(tokens[0]) + "'");
      continue;
    }
    std::optional<std::size_t> j;
    if (tokens[1] != "-") {
      j = parse_agent(tokens[1], 'h', instance.num_hospitals());
      if (!j) {
        diag.error(number, "unknown hospital '" + std::string(tokens[1]) + "'");
        continue;
      }
    }
    const ResidentId r = resident(*i);
    if (seen_line[*i] != 0) {
      result.violations.push_back(
          {ViolationKind::kDuplicateAssignment, r, std::nullopt,
           to_string(r) + " listed on lines " + std::to_string(seen_line[*i]) +
               " and " + std::to_string(number)});
    }
    seen_line[*i] = number;
    if (j) {
      matching.assign(r, hospital(*j));
    } else {
      matching.unassign(r);
    }
  }
  if (!diag.failed()) result.matching = std::move(matching);
  result.diagnostics = diag.take();
  return result;
}

MatchingParse parse_matching(std::string_view text, const Instance& instance) {
  auto raw = parse_assignment(text, instance);
  MatchingParse result;
  result.diagnostics = std::move(raw.diagnostics);
  if (!raw.matching) return result;
  auto violations = std::move(raw.violations);
  for (auto& v : validate_matching(instance, *raw.matching)) {
    violations.push_back(std::move(v));
  }
  for (const auto& v : violations) {
    result.diagnostics.push_back({0, Severity::kError, v.message});
  }
  if (violations.empty()) result.matching = std::move(raw.matching);
  return result;
}

std::string serialize_matching(const Matching& matching) {
  std::ostringstream out;
  for (std::size_t i = 0; i < matching.num_residents(); ++i) {
    const auto h = matching.hospital_of(resident(i));
    out << to_string(resident(i)) << ' ' << (h ? to_string(*h) : "-") << '\n';
  }
  return out.str();
}

std::string serialize_pairs(const std::vector<Pair>& pairs) {
  std::ostringstream out;
  for (const auto& [r, h] : pairs) out << to_string(r) << ' ' << to_string(h) << '\n';
  return out.str();
}

}  // namespace hrt
