#include "hrt/ip_model.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace hrt {
namespace {

std::string column_name(const IpVariable& v) {
  return "x_" + std::to_string(idx(v.resident) + 1) + "_" +
         std::to_string(idx(v.hospital) + 1);
}

std::vector<Term> collect(const std::map<int, std::int64_t>& coefficients) {
  std::vector<Term> terms;
  for (const auto& [column, coefficient] : coefficients) {
    if (coefficient != 0) terms.push_back({column, coefficient});
  }
  return terms;
}

}  // namespace

std::string LinearConstraint::name() const {
  switch (kind) {
    case RowKind::kResident:
      return "res_" + std::to_string(idx(resident) + 1);
    case RowKind::kCapacity:
      return "cap_" + std::to_string(idx(hospital) + 1);
    case RowKind::kStability:
      return "stab_" + std::to_string(idx(resident) + 1) + "_" +
             std::to_string(idx(hospital) + 1);
  }
  return {};
}

std::int64_t LinearConstraint::activity(std::span<const std::uint8_t> x) const {
  std::int64_t sum = 0;
  for (const Term& t : terms) sum += t.coefficient * x[static_cast<std::size_t>(t.column)];
  return sum;
}

IpModel::IpModel(std::shared_ptr<const Instance> instance, RankTable ranks,
                 std::vector<IpVariable> variables,
                 std::vector<LinearConstraint> constraints)
    : instance_(std::move(instance)),
      ranks_(std::move(ranks)),
      variables_(std::move(variables)),
      constraints_(std::move(constraints)),
      column_of_(instance_->num_residents() * instance_->num_hospitals(), -1) {
  for (const auto& v : variables_) {
    column_of_[idx(v.resident) * instance_->num_hospitals() + idx(v.hospital)] =
        v.column;
  }
}

std::int64_t IpModel::objective(std::span<const std::uint8_t> x) const {
  std::int64_t sum = 0;
  for (std::uint8_t v : x) sum += v;
  return sum;
}

std::vector<std::size_t> IpModel::violated_rows(
    std::span<const std::uint8_t> x) const {
  if (x.size() != variables_.size()) {
    throw std::invalid_argument("assignment vector has wrong length");
  }
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < constraints_.size(); ++k) {
    if (constraints_[k].activity(x) > constraints_[k].rhs) out.push_back(k);
  }
  return out;
}

bool IpModel::is_feasible(std::span<const std::uint8_t> x) const {
  if (std::any_of(x.begin(), x.end(), [](std::uint8_t v) { return v > 1; })) {
    return false;
  }
  return violated_rows(x).empty();
}

std::vector<std::uint8_t> IpModel::encode(const Matching& matching) const {
  std::vector<std::uint8_t> x(variables_.size(), 0);
  for (const auto& [r, h] : matching.pairs()) {
    const int c = idx(h) < instance_->num_hospitals() ? column(r, h) : -1;
    if (c < 0) {
      throw std::invalid_argument("matching uses unacceptable pair (" +
                                  to_string(r) + ", " + to_string(h) + ")");
    }
    x[static_cast<std::size_t>(c)] = 1;
  }
  return x;
}

IpModel build_model(const Instance& instance, const RankTable& ranks) {
  auto shared = std::make_shared<const Instance>(instance);
  const std::size_t n1 = instance.num_residents();
  const std::size_t n2 = instance.num_hospitals();

  std::vector<IpVariable> variables;
  std::vector<int> column_of(n1 * n2, -1);
  for (const auto& [r, h] : instance.acceptable_pairs()) {
    const int c = static_cast<int>(variables.size());
    variables.push_back({r, h, c});
    column_of[idx(r) * n2 + idx(h)] = c;
  }
  auto col = [&](ResidentId r, HospitalId h) { return column_of[idx(r) * n2 + idx(h)]; };

  std::vector<LinearConstraint> rows;
  rows.reserve(n1 + n2 + variables.size());
  for (std::size_t i = 0; i < n1; ++i) {
    const ResidentId r = resident(i);
    std::map<int, std::int64_t> coefficients;
    for (HospitalId h : instance.prefs(r).flatten()) coefficients[col(r, h)] += 1;
    rows.push_back({RowKind::kResident, collect(coefficients), 1, r, {}});
  }
  for (std::size_t j = 0; j < n2; ++j) {
    const HospitalId h = hospital(j);
    std::map<int, std::int64_t> coefficients;
    for (ResidentId r : instance.prefs(h).flatten()) coefficients[col(r, h)] += 1;
    rows.push_back({RowKind::kCapacity, collect(coefficients), instance.capacity(h), {}, h});
  }
  for (const auto& v : variables) {
    const ResidentId r = v.resident;
    const HospitalId h = v.hospital;
    const std::int64_t cap = instance.capacity(h);
    std::map<int, std::int64_t> coefficients;
    const Rank r_rank = ranks.of(r, h);
    for (HospitalId q : instance.prefs(r).flatten()) {
      if (ranks.of(r, q) <= r_rank) coefficients[col(r, q)] -= cap;
    }
    const Rank h_rank = ranks.of(h, r);
    for (ResidentId p : instance.prefs(h).flatten()) {
      if (ranks.of(h, p) <= h_rank) coefficients[col(p, h)] -= 1;
    }
    rows.push_back({RowKind::kStability, collect(coefficients), -cap, r, h});
  }
  return IpModel(std::move(shared), ranks, std::move(variables), std::move(rows));
}

std::string export_lp(const IpModel& model) {
  constexpr std::size_t kTermsPerLine = 8;
  const auto& vars = model.variables();
  std::ostringstream out;

  auto write_terms = [&](const std::vector<Term>& terms) {
    if (terms.empty()) {
      if (vars.empty()) {
        out << "0";
      } else {
        out << "0 " << column_name(vars.front());
      }
      return;
    }
    for (std::size_t k = 0; k < terms.size(); ++k) {
      const auto& t = terms[k];
      if (k > 0 && k % kTermsPerLine == 0) out << "\n   ";
      const std::int64_t magnitude = t.coefficient < 0 ? -t.coefficient : t.coefficient;
      if (k == 0) {
        if (t.coefficient < 0) out << "- ";
      } else {
        out << (t.coefficient < 0 ? " - " : " + ");
      }
      if (magnitude != 1) out << magnitude << ' ';
      out << column_name(vars[static_cast<std::size_t>(t.column)]);
    }
  };

  out << "Maximize\n obj: ";
  std::vector<Term> objective;
  for (const auto& v : vars) objective.push_back({v.column, 1});
  write_terms(objective);
  out << "\nSubject To\n";
  for (const auto& row : model.constraints()) {
    out << ' ' << row.name() << ": ";
    write_terms(row.terms);
    out << " <= " << row.rhs << '\n';
  }
  out << "Binary\n";
  for (const auto& v : vars) out << ' ' << column_name(v) << '\n';
  out << "End\n";
  return out.str();
}

}  // namespace hrt
