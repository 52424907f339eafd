#include "hrt/heuristics.hpp"

#include <deque>
#include <stdexcept>

#include "hrt/random.hpp"

namespace hrt {
namespace {

template <typename Id>
PreferenceList<Id> strict_order(const PreferenceList<Id>& list,
                                TieBreakPolicy policy, Rng& rng) {
  PreferenceList<Id> out;
  for (auto tie : list.ties) {
    if (policy.mode == TieBreakPolicy::Mode::kSeededRandom) {
      rng.shuffle(std::span<Id>(tie));
    }
    for (Id id : tie) out.ties.push_back({id});
  }
  return out;
}

}  // namespace

Instance break_ties(const Instance& instance, TieBreakPolicy policy) {
  Rng rng(policy.seed);
  std::vector<ResidentPrefs> residents;
  for (const auto& prefs : instance.residents()) {
    residents.push_back(strict_order(prefs, policy, rng));
  }
  std::vector<HospitalSpec> hospitals;
  for (const auto& hosp : instance.hospitals()) {
    hospitals.push_back({hosp.capacity, strict_order(hosp.prefs, policy, rng)});
  }
  return Instance(std::move(residents), std::move(hospitals));
}

Matching gale_shapley(const Instance& strict_instance) {
  if (strict_instance.has_resident_ties() || strict_instance.has_hospital_ties()) {
    throw std::invalid_argument("gale_shapley requires strictly ordered lists");
  }
  const RankTable ranks(strict_instance);
  const std::size_t n1 = strict_instance.num_residents();
  const std::size_t n2 = strict_instance.num_hospitals();
  std::vector<std::vector<HospitalId>> lists(n1);
  for (std::size_t i = 0; i < n1; ++i) {
    lists[i] = strict_instance.prefs(resident(i)).flatten();
  }
  std::vector<std::size_t> next(n1, 0);
  std::vector<std::vector<ResidentId>> held(n2);
  Matching matching(n1);

  std::deque<ResidentId> free;
  for (std::size_t i = 0; i < n1; ++i) free.push_back(resident(i));
  while (!free.empty()) {
    const ResidentId r = free.front();
    free.pop_front();
    if (next[idx(r)] >= lists[idx(r)].size()) continue;
    const HospitalId h = lists[idx(r)][next[idx(r)]++];
    auto& assigned = held[idx(h)];
    const auto capacity = static_cast<std::size_t>(strict_instance.capacity(h));
    if (assigned.size() < capacity) {
      assigned.push_back(r);
      matching.assign(r, h);
      continue;
    }
    // Full: compare with the worst assignee.
    auto worst = assigned.end();
    for (auto it = assigned.begin(); it != assigned.end(); ++it) {
      if (worst == assigned.end() || ranks.of(h, *it) > ranks.of(h, *worst)) worst = it;
    }
    if (worst != assigned.end() && ranks.of(h, r) < ranks.of(h, *worst)) {
      const ResidentId rejected = *worst;
      *worst = r;
      matching.assign(r, h);
      matching.unassign(rejected);
      free.push_front(rejected);
    } else {
      free.push_front(r);
    }
  }
  return matching;
}

Matching warm_start(const Instance& instance, std::uint64_t seed) {
  return gale_shapley(break_ties(instance, TieBreakPolicy::seeded(seed)));
}

}  // namespace hrt
