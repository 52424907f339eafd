#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hrt {

// Dense zero-based agent indices. Text formats use one-based names (r1, h1).
enum class ResidentId : std::int32_t {};
enum class HospitalId : std::int32_t {};

constexpr std::size_t idx(ResidentId r) noexcept {
  return static_cast<std::size_t>(r);
}
constexpr std::size_t idx(HospitalId h) noexcept {
  return static_cast<std::size_t>(h);
}
constexpr ResidentId resident(std::size_t i) noexcept {
  return static_cast<ResidentId>(i);
}
constexpr HospitalId hospital(std::size_t j) noexcept {
  return static_cast<HospitalId>(j);
}

std::string to_string(ResidentId r);
std::string to_string(HospitalId h);

using Pair = std::pair<ResidentId, HospitalId>;

// An ordered sequence of ties; a strictly ranked entry is a tie of size one.
template <typename Id>
struct PreferenceList {
  using Tie = std::vector<Id>;
  std::vector<Tie> ties;

  std::size_t length() const noexcept {
    std::size_t n = 0;
    for (const auto& t : ties) n += t.size();
    return n;
  }
  bool empty() const noexcept { return length() == 0; }
  bool is_strict() const noexcept {
    for (const auto& t : ties) {
      if (t.size() > 1) return false;
    }
    return true;
  }
  std::vector<Id> flatten() const {
    std::vector<Id> out;
    for (const auto& t : ties) out.insert(out.end(), t.begin(), t.end());
    return out;
  }
  friend bool operator==(const PreferenceList&, const PreferenceList&) = default;
};

using ResidentPrefs = PreferenceList<HospitalId>;
using HospitalPrefs = PreferenceList<ResidentId>;

struct HospitalSpec {
  int capacity = 0;
  HospitalPrefs prefs;
  friend bool operator==(const HospitalSpec&, const HospitalSpec&) = default;
};

// An HRT instance. Construction enforces mutual acceptability, in-range ids,
// no repeated agent within a list, no empty ties and non-negative capacities;
// violations throw std::invalid_argument.
class Instance {
 public:
  Instance(std::vector<ResidentPrefs> residents,
           std::vector<HospitalSpec> hospitals);

  std::size_t num_residents() const noexcept { return residents_.size(); }
  std::size_t num_hospitals() const noexcept { return hospitals_.size(); }

  const ResidentPrefs& prefs(ResidentId r) const { return residents_[idx(r)]; }
  const HospitalPrefs& prefs(HospitalId h) const {
    return hospitals_[idx(h)].prefs;
  }
  int capacity(HospitalId h) const { return hospitals_[idx(h)].capacity; }
  int total_capacity() const noexcept;

  const std::vector<ResidentPrefs>& residents() const noexcept {
    return residents_;
  }
  const std::vector<HospitalSpec>& hospitals() const noexcept {
    return hospitals_;
  }

  bool is_acceptable(ResidentId r, HospitalId h) const;
  std::size_t num_acceptable_pairs() const noexcept { return num_pairs_; }
  // Resident-major, each resident's hospitals in preference order.
  std::vector<Pair> acceptable_pairs() const;

  bool has_resident_ties() const noexcept;
  bool has_hospital_ties() const noexcept;

  // A copy with the given pairs removed from both sides; ties left empty are
  // dropped.
  Instance without_pairs(const std::vector<Pair>& removed) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.residents_ == b.residents_ && a.hospitals_ == b.hospitals_;
  }

 private:
  std::vector<ResidentPrefs> residents_;
  std::vector<HospitalSpec> hospitals_;
  std::size_t num_pairs_ = 0;
};

using Rank = std::int32_t;
inline constexpr Rank kInfiniteRank = std::numeric_limits<Rank>::max();

// rank(a, b) = 1 + number of agents a strictly prefers to b; kInfiniteRank for
// unacceptable pairs.
class RankTable {
 public:
  RankTable() = default;
  explicit RankTable(const Instance& instance);

  Rank of(ResidentId r, HospitalId h) const {
    return resident_rank_[idx(r) * num_hospitals_ + idx(h)];
  }
  Rank of(HospitalId h, ResidentId r) const {
    return hospital_rank_[idx(r) * num_hospitals_ + idx(h)];
  }
  std::size_t num_residents() const noexcept { return num_residents_; }
  std::size_t num_hospitals() const noexcept { return num_hospitals_; }

  friend bool operator==(const RankTable&, const RankTable&) = default;

 private:
  std::size_t num_residents_ = 0;
  std::size_t num_hospitals_ = 0;
  std::vector<Rank> resident_rank_;
  std::vector<Rank> hospital_rank_;
};

RankTable build_rank_table(const Instance& instance);

// Assignment of residents to hospitals. Acceptability and capacity are not
// enforced here; see validate_matching.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::size_t num_residents)
      : assignment_(num_residents) {}

  std::size_t num_residents() const noexcept { return assignment_.size(); }
  std::optional<HospitalId> hospital_of(ResidentId r) const {
    return assignment_[idx(r)];
  }
  void assign(ResidentId r, HospitalId h) { assignment_[idx(r)] = h; }
  void unassign(ResidentId r) { assignment_[idx(r)].reset(); }

  std::size_t size() const noexcept;
  std::vector<Pair> pairs() const;
  // Residents assigned to h, in index order.
  std::vector<ResidentId> assignees(HospitalId h) const;

  friend bool operator==(const Matching&, const Matching&) = default;
  friend auto operator<=>(const Matching& a, const Matching& b) {
    return a.pairs() <=> b.pairs();
  }

 private:
  std::vector<std::optional<HospitalId>> assignment_;
};

std::size_t matching_size(const Matching& matching);

enum class ViolationKind {
  kCapacity,
  kUnacceptable,
  kOutOfRange,
  kDuplicateAssignment,
};

struct Violation {
  ViolationKind kind;
  std::optional<ResidentId> resident;
  std::optional<HospitalId> hospital;
  std::string message;
};

std::vector<Violation> validate_matching(const Instance& instance,
                                         const Matching& matching);

// Throws std::invalid_argument when (r, h) is not an acceptable pair.
bool is_blocking_pair(const Instance& instance, const RankTable& ranks,
                      const Matching& matching, ResidentId r, HospitalId h);

// Pairwise scan over every acceptable pair.
std::vector<Pair> blocking_pairs(const Instance& instance,
                                 const RankTable& ranks,
                                 const Matching& matching);

// Per-hospital scan using each hospital's worst assignee; independent of
// is_blocking_pair.
bool is_stable(const Instance& instance, const RankTable& ranks,
               const Matching& matching);

}  // namespace hrt
