#include "hrt/core.hpp"

#include <algorithm>
#include <stdexcept>

namespace hrt {

std::string to_string(ResidentId r) { return "r" + std::to_string(idx(r) + 1); }
std::string to_string(HospitalId h) { return "h" + std::to_string(idx(h) + 1); }

namespace {

template <typename Id>
void check_list(const PreferenceList<Id>& list, std::size_t bound,
                std::vector<char>& seen, const std::string& owner) {
  std::fill(seen.begin(), seen.end(), 0);
  for (const auto& tie : list.ties) {
    if (tie.empty()) {
      throw std::invalid_argument("empty tie in list of " + owner);
    }
    for (Id id : tie) {
      if (idx(id) >= bound) {
        throw std::invalid_argument("id out of range in list of " + owner);
      }
      if (seen[idx(id)]) {
        throw std::invalid_argument(to_string(id) + " appears twice in list of " +
                                    owner);
      }
      seen[idx(id)] = 1;
    }
  }
}

}  // namespace

Instance::Instance(std::vector<ResidentPrefs> residents,
                   std::vector<HospitalSpec> hospitals)
    : residents_(std::move(residents)), hospitals_(std::move(hospitals)) {
  const std::size_t n1 = residents_.size();
  const std::size_t n2 = hospitals_.size();
  std::vector<char> seen_h(n2), seen_r(n1);
  // acceptable[r * n2 + h]: bit 1 from the resident side, bit 2 from the
  // hospital side.
  std::vector<unsigned char> acceptable(n1 * n2, 0);
  for (std::size_t i = 0; i < n1; ++i) {
    check_list(residents_[i], n2, seen_h, to_string(resident(i)));
    for (const auto& tie : residents_[i].ties) {
      for (HospitalId h : tie) acceptable[i * n2 + idx(h)] |= 1;
    }
  }
  for (std::size_t j = 0; j < n2; ++j) {
    if (hospitals_[j].capacity < 0) {
      throw std::invalid_argument("negative capacity for " +
                                  to_string(hospital(j)));
    }
    check_list(hospitals_[j].prefs, n1, seen_r, to_string(hospital(j)));
    for (const auto& tie : hospitals_[j].prefs.ties) {
      for (ResidentId r : tie) acceptable[idx(r) * n2 + j] |= 2;
    }
  }
  for (std::size_t k = 0; k < acceptable.size(); ++k) {
    if (acceptable[k] == 1 || acceptable[k] == 2) {
      throw std::invalid_argument(
          "non-mutual pair (" + to_string(resident(k / n2)) + ", " +
          to_string(hospital(k % n2)) + ")");
    }
    if (acceptable[k] == 3) ++num_pairs_;
  }
}

int Instance::total_capacity() const noexcept {
  int total = 0;
  for (const auto& h : hospitals_) total += h.capacity;
  return total;
}

bool Instance::is_acceptable(ResidentId r, HospitalId h) const {
  for (const auto& tie : residents_[idx(r)].ties) {
    if (std::find(tie.begin(), tie.end(), h) != tie.end()) return true;
  }
  return false;
}

std::vector<Pair> Instance::acceptable_pairs() const {
  std::vector<Pair> out;
  out.reserve(num_pairs_);
  for (std::size_t i = 0; i < residents_.size(); ++i) {
    for (const auto& tie : residents_[i].ties) {
      for (HospitalId h : tie) out.emplace_back(resident(i), h);
    }
  }
  return out;
}

bool Instance::has_resident_ties() const noexcept {
  return std::any_of(residents_.begin(), residents_.end(),
                     [](const ResidentPrefs& p) { return !p.is_strict(); });
}

bool Instance::has_hospital_ties() const noexcept {
  return std::any_of(
      hospitals_.begin(), hospitals_.end(),
      [](const HospitalSpec& h) { return !h.prefs.is_strict(); });
}

namespace {

template <typename Id, typename Pred>
PreferenceList<Id> filtered(const PreferenceList<Id>& list, Pred keep) {
  PreferenceList<Id> out;
  for (const auto& tie : list.ties) {
    typename PreferenceList<Id>::Tie kept;
    for (Id id : tie) {
      if (keep(id)) kept.push_back(id);
    }
    if (!kept.empty()) out.ties.push_back(std::move(kept));
  }
  return out;
}

}  // namespace

Instance Instance::without_pairs(const std::vector<Pair>& removed) const {
  const std::size_t n2 = hospitals_.size();
  std::vector<char> gone(residents_.size() * n2, 0);
  for (const auto& [r, h] : removed) gone[idx(r) * n2 + idx(h)] = 1;

  std::vector<ResidentPrefs> residents;
  residents.reserve(residents_.size());
  for (std::size_t i = 0; i < residents_.size(); ++i) {
    residents.push_back(filtered(residents_[i], [&](HospitalId h) {
      return !gone[i * n2 + idx(h)];
    }));
  }
  std::vector<HospitalSpec> hospitals;
  hospitals.reserve(n2);
  for (std::size_t j = 0; j < n2; ++j) {
    hospitals.push_back(
        {hospitals_[j].capacity, filtered(hospitals_[j].prefs, [&](ResidentId r) {
           return !gone[idx(r) * n2 + j];
         })});
  }
  return Instance(std::move(residents), std::move(hospitals));
}

RankTable::RankTable(const Instance& instance)
    : num_residents_(instance.num_residents()),
      num_hospitals_(instance.num_hospitals()),
      resident_rank_(num_residents_ * num_hospitals_, kInfiniteRank),
      hospital_rank_(num_residents_ * num_hospitals_, kInfiniteRank) {
  for (std::size_t i = 0; i < num_residents_; ++i) {
    Rank rank = 1;
    for (const auto& tie : instance.prefs(resident(i)).ties) {
      for (HospitalId h : tie) resident_rank_[i * num_hospitals_ + idx(h)] = rank;
      rank += static_cast<Rank>(tie.size());
    }
  }
  for (std::size_t j = 0; j < num_hospitals_; ++j) {
    Rank rank = 1;
    for (const auto& tie : instance.prefs(hospital(j)).ties) {
      for (ResidentId r : tie) hospital_rank_[idx(r) * num_hospitals_ + j] = rank;
      rank += static_cast<Rank>(tie.size());
    }
  }
}

RankTable build_rank_table(const Instance& instance) {
  return RankTable(instance);
}

std::size_t Matching::size() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(assignment_.begin(), assignment_.end(),
                    [](const auto& a) { return a.has_value(); }));
}

std::vector<Pair> Matching::pairs() const {
  std::vector<Pair> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i]) out.emplace_back(resident(i), *assignment_[i]);
  }
  return out;
}

std::vector<ResidentId> Matching::assignees(HospitalId h) const {
  std::vector<ResidentId> out;
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    if (assignment_[i] == h) out.push_back(resident(i));
  }
  return out;
}

std::size_t matching_size(const Matching& matching) { return matching.size(); }

std::vector<Violation> validate_matching(const Instance& instance,
                                         const Matching& matching) {
  std::vector<Violation> out;
  if (matching.num_residents() != instance.num_residents()) {
    out.push_back({ViolationKind::kOutOfRange, std::nullopt, std::nullopt,
                   "matching covers " + std::to_string(matching.num_residents()) +
                       " residents, instance has " +
                       std::to_string(instance.num_residents())});
    return out;
  }
  std::vector<int> load(instance.num_hospitals(), 0);
  for (const auto& [r, h] : matching.pairs()) {
    if (idx(h) >= instance.num_hospitals()) {
      out.push_back({ViolationKind::kOutOfRange, r, h,
                     to_string(r) + " assigned to unknown " + to_string(h)});
      continue;
    }
    ++load[idx(h)];
    if (!instance.is_acceptable(r, h)) {
      out.push_back({ViolationKind::kUnacceptable, r, h,
                     "pair (" + to_string(r) + ", " + to_string(h) +
                         ") is not acceptable"});
    }
  }
  for (std::size_t j = 0; j < load.size(); ++j) {
    const HospitalId h = hospital(j);
    if (load[j] > instance.capacity(h)) {
      out.push_back({ViolationKind::kCapacity, std::nullopt, h,
                     to_string(h) + " has " + std::to_string(load[j]) +
                         " assignees, capacity " +
                         std::to_string(instance.capacity(h))});
    }
  }
  return out;
}

bool is_blocking_pair(const Instance& instance, const RankTable& ranks,
                      const Matching& matching, ResidentId r, HospitalId h) {
  const Rank r_rank = ranks.of(r, h);
  if (r_rank == kInfiniteRank) {
    throw std::invalid_argument("(" + to_string(r) + ", " + to_string(h) +
                                ") is not an acceptable pair");
  }
  const auto current = matching.hospital_of(r);
  const bool resident_wants =
      !current || r_rank < ranks.of(r, *current);
  if (!resident_wants) return false;

  const auto assigned = matching.assignees(h);
  if (static_cast<int>(assigned.size()) < instance.capacity(h)) return true;
  const Rank h_rank = ranks.of(h, r);
  return std::any_of(assigned.begin(), assigned.end(), [&](ResidentId other) {
    return h_rank < ranks.of(h, other);
  });
}

std::vector<Pair> blocking_pairs(const Instance& instance,
                                 const RankTable& ranks,
                                 const Matching& matching) {
  std::vector<Pair> out;
  for (const auto& [r, h] : instance.acceptable_pairs()) {
    if (is_blocking_pair(instance, ranks, matching, r, h)) out.emplace_back(r, h);
  }
  return out;
}

bool is_stable(const Instance& instance, const RankTable& ranks,
               const Matching& matching) {
  const std::size_t n2 = instance.num_hospitals();
  std::vector<int> load(n2, 0);
  std::vector<Rank> worst(n2, 0);
  for (const auto& [r, h] : matching.pairs()) {
    ++load[idx(h)];
    worst[idx(h)] = std::max(worst[idx(h)], ranks.of(h, r));
  }
  for (std::size_t j = 0; j < n2; ++j) {
    const HospitalId h = hospital(j);
    const bool undersubscribed = load[j] < instance.capacity(h);
    // Residents ranked strictly better than the threshold can block h.
    const Rank threshold = undersubscribed ? kInfiniteRank : worst[j];
    for (const auto& tie : instance.prefs(h).ties) {
      for (ResidentId r : tie) {
        const Rank hr = ranks.of(h, r);
        if (!undersubscribed && hr >= threshold) continue;
        const auto current = matching.hospital_of(r);
        if (!current || ranks.of(r, h) < ranks.of(r, *current)) return false;
      }
    }
  }
  return true;
}

}  // namespace hrt
