#include "hrt/oracle.hpp"

#include <algorithm>
#include <string>

namespace hrt {
namespace {

class Enumerator {
 public:
  Enumerator(const Instance& instance, const OracleLimit& limit)
      : instance_(instance),
        ranks_(instance),
        limit_(limit),
        current_(instance.num_residents()),
        load_(instance.num_hospitals(), 0) {}

  std::set<Matching> run() {
    descend(0);
    return std::move(found_);
  }

 private:
  // True if some decided resident r <= i already blocks with h in a way no
  // later assignment can repair: r prefers h and h holds someone it ranks
  // strictly below r.
  bool resident_blocked(ResidentId r) const {
    const auto current = current_.hospital_of(r);
    const Rank limit = current ? ranks_.of(r, *current) : kInfiniteRank;
    for (const auto& tie : instance_.prefs(r).ties) {
      for (HospitalId h : tie) {
        if (ranks_.of(r, h) >= limit) return false;
        const Rank hr = ranks_.of(h, r);
        for (ResidentId a : holders_of(h)) {
          if (hr < ranks_.of(h, a)) return true;
        }
      }
    }
    return false;
  }

  std::vector<ResidentId> holders_of(HospitalId h) const {
    std::vector<ResidentId> out;
    for (std::size_t k = 0; k < depth_; ++k) {
      if (current_.hospital_of(resident(k)) == h) out.push_back(resident(k));
    }
    return out;
  }

  // Newly placed (i, h) makes h hold i; any earlier resident that prefers h
  // and that h ranks above i now blocks for good.
  bool placement_blocks(ResidentId i, HospitalId h) const {
    const Rank hi = ranks_.of(h, i);
    for (std::size_t k = 0; k < idx(i); ++k) {
      const ResidentId r = resident(k);
      const Rank hr = ranks_.of(h, r);
      if (hr == kInfiniteRank || hr >= hi) continue;
      const auto current = current_.hospital_of(r);
      if (!current || ranks_.of(r, h) < ranks_.of(r, *current)) return true;
    }
    return false;
  }

  void descend(std::size_t i) {
    if (++nodes_ > limit_.node_budget) {
      throw OracleLimitExceeded("oracle node budget of " +
                                std::to_string(limit_.node_budget) + " exceeded");
    }
    if (i == instance_.num_residents()) {
      if (is_stable(instance_, ranks_, current_)) found_.insert(current_);
      return;
    }
    const ResidentId r = resident(i);
    depth_ = i + 1;
    current_.unassign(r);
    if (!resident_blocked(r)) descend(i + 1);
    for (HospitalId h : instance_.prefs(r).flatten()) {
      if (load_[idx(h)] >= instance_.capacity(h)) continue;
      current_.assign(r, h);
      ++load_[idx(h)];
      depth_ = i + 1;
      if (!placement_blocks(r, h) && !resident_blocked(r)) descend(i + 1);
      --load_[idx(h)];
    }
    current_.unassign(r);
    depth_ = i;
  }

  const Instance& instance_;
  RankTable ranks_;
  OracleLimit limit_;
  Matching current_;
  std::vector<int> load_;
  std::size_t depth_ = 0;
  std::uint64_t nodes_ = 0;
  std::set<Matching> found_;
};

}  // namespace

std::set<Matching> enumerate_stable_matchings(const Instance& instance,
                                              const OracleLimit& limit) {
  if (instance.num_residents() > limit.max_residents) {
    throw OracleLimitExceeded(std::to_string(instance.num_residents()) +
                              " residents exceeds oracle limit of " +
                              std::to_string(limit.max_residents));
  }
  if (instance.num_acceptable_pairs() > limit.max_pairs) {
    throw OracleLimitExceeded(std::to_string(instance.num_acceptable_pairs()) +
                              " acceptable pairs exceeds oracle limit of " +
                              std::to_string(limit.max_pairs));
  }
  return Enumerator(instance, limit).run();
}

std::size_t max_stable_size(const Instance& instance, const OracleLimit& limit) {
  std::size_t best = 0;
  for (const auto& m : enumerate_stable_matchings(instance, limit)) {
    best = std::max(best, m.size());
  }
  return best;
}

}  // namespace hrt
