#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "hrt/core.hpp"

namespace hrt {

// x_{i,j} for one acceptable pair, binary.
struct IpVariable {
  ResidentId resident;
  HospitalId hospital;
  int column;
};

enum class RowKind { kResident, kCapacity, kStability };

struct Term {
  int column;
  std::int64_t coefficient;
  friend bool operator==(const Term&, const Term&) = default;
};

// sum(coefficient * x) <= rhs, exact integers.
//
// Stability rows are stored folded. For pair (i, j) the row
//   c_j * (1 - sum_{q in S_ij} x_iq) - sum_{p in T_ij} x_pj <= 0
// becomes
//   -c_j * sum_{q in S_ij} x_iq - sum_{p in T_ij} x_pj <= -c_j
// where S_ij are the hospitals r_i ranks no worse than h_j and T_ij the
// residents h_j ranks no worse than r_i. x_ij sits in both sets.
struct LinearConstraint {
  RowKind kind;
  std::vector<Term> terms;  // sorted by column, no duplicates
  std::int64_t rhs;
  ResidentId resident{};  // kResident, kStability
  HospitalId hospital{};  // kCapacity, kStability

  std::string name() const;
  std::int64_t activity(std::span<const std::uint8_t> x) const;
};

class IpModel {
 public:
  IpModel(std::shared_ptr<const Instance> instance, RankTable ranks,
          std::vector<IpVariable> variables,
          std::vector<LinearConstraint> constraints);

  const Instance& instance() const noexcept { return *instance_; }
  const RankTable& ranks() const noexcept { return ranks_; }
  const std::vector<IpVariable>& variables() const noexcept { return variables_; }
  const std::vector<LinearConstraint>& constraints() const noexcept {
    return constraints_;
  }
  std::size_t num_columns() const noexcept { return variables_.size(); }

  // -1 when (r, h) is not acceptable.
  int column(ResidentId r, HospitalId h) const {
    return column_of_[idx(r) * instance_->num_hospitals() + idx(h)];
  }

  std::int64_t objective(std::span<const std::uint8_t> x) const;
  // Indices of rows violated by x; x must have one 0/1 entry per column.
  std::vector<std::size_t> violated_rows(std::span<const std::uint8_t> x) const;
  bool is_feasible(std::span<const std::uint8_t> x) const;

  // Indicator vector of a matching over acceptable pairs. Throws
  // std::invalid_argument if the matching uses an unacceptable pair.
  std::vector<std::uint8_t> encode(const Matching& matching) const;

 private:
  std::shared_ptr<const Instance> instance_;
  RankTable ranks_;
  std::vector<IpVariable> variables_;
  std::vector<LinearConstraint> constraints_;
  std::vector<int> column_of_;
};

// Columns follow Instance::acceptable_pairs(). Rows: n1 resident rows, then n2
// capacity rows, then one stability row per acceptable pair in column order.
IpModel build_model(const Instance& instance, const RankTable& ranks);

// CPLEX LP-format text: Maximize / Subject To / Binary / End.
std::string export_lp(const IpModel& model);

}  // namespace hrt
