#include "hrt/preprocess.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "hrt/random.hpp"

namespace hrt {
namespace {

void require_strict_residents(const Instance& instance) {
  if (instance.has_resident_ties()) {
    throw std::invalid_argument(
        "reduction requires strictly ordered resident lists");
  }
}

// Pending agents, taken FIFO or at random.
class Worklist {
 public:
  Worklist(std::size_t n, const ReduceOrder& order)
      : queued_(n, 0) {
    if (order.shuffle_seed) rng_.emplace(*order.shuffle_seed);
    for (std::size_t k = 0; k < n; ++k) push(k);
  }
  void push(std::size_t k) {
    if (queued_[k]) return;
    queued_[k] = 1;
    items_.push_back(k);
  }
  bool empty() const { return items_.empty(); }
  std::size_t pop() {
    std::size_t pos = rng_ ? static_cast<std::size_t>(rng_->below(items_.size())) : 0;
    const std::size_t k = items_[pos];
    items_.erase(items_.begin() + static_cast<std::ptrdiff_t>(pos));
    queued_[k] = 0;
    return k;
  }

 private:
  std::deque<std::size_t> items_;
  std::vector<char> queued_;
  std::optional<Rng> rng_;
};

// Preference lists under deletion. Tie indices refer to the input lists.
class ReducingLists {
 public:
  explicit ReducingLists(const Instance& instance)
      : instance_(instance),
        n2_(instance.num_hospitals()),
        deleted_(instance.num_residents() * n2_, 0),
        tie_of_(instance.num_residents() * n2_, -1) {
    for (std::size_t j = 0; j < n2_; ++j) {
      const auto& ties = instance.prefs(hospital(j)).ties;
      for (std::size_t t = 0; t < ties.size(); ++t) {
        for (ResidentId r : ties[t]) tie_of_[idx(r) * n2_ + j] = static_cast<int>(t);
      }
    }
  }

  bool deleted(ResidentId r, HospitalId h) const {
    return deleted_[idx(r) * n2_ + idx(h)] != 0;
  }
  void remove(ResidentId r, HospitalId h) {
    deleted_[idx(r) * n2_ + idx(h)] = 1;
  }
  int tie_of(HospitalId h, ResidentId r) const {
    return tie_of_[idx(r) * n2_ + idx(h)];
  }

  // Resident's list in order, deleted entries skipped.
  std::vector<HospitalId> resident_list(ResidentId r) const {
    std::vector<HospitalId> out;
    for (const auto& tie : instance_.prefs(r).ties) {
      for (HospitalId h : tie) {
        if (!deleted(r, h)) out.push_back(h);
      }
    }
    return out;
  }

  // Surviving members of the first non-empty tie with index > after_tie.
  std::vector<ResidentId> next_tie(HospitalId h, int after_tie) const {
    const auto& ties = instance_.prefs(h).ties;
    for (std::size_t t = static_cast<std::size_t>(after_tie + 1); t < ties.size(); ++t) {
      std::vector<ResidentId> alive;
      for (ResidentId r : ties[t]) {
        if (!deleted(r, h)) alive.push_back(r);
      }
      if (!alive.empty()) return alive;
    }
    return {};
  }

  Reduction finish() const {
    std::vector<Pair> gone;
    for (std::size_t k = 0; k < deleted_.size(); ++k) {
      if (deleted_[k]) gone.emplace_back(resident(k / n2_), hospital(k % n2_));
    }
    return {instance_.without_pairs(gone), gone};
  }

 private:
  const Instance& instance_;
  std::size_t n2_;
  std::vector<char> deleted_;
  std::vector<int> tie_of_;
};

}  // namespace

Reduction hospitals_offer(const Instance& instance, ReduceOrder order) {
  require_strict_residents(instance);
  const std::size_t n1 = instance.num_residents();
  const std::size_t n2 = instance.num_hospitals();
  ReducingLists lists(instance);
  std::vector<std::optional<HospitalId>> assigned(n1);
  std::vector<int> vacancies(n2);
  std::vector<std::vector<ResidentId>> assignees(n2);
  for (std::size_t j = 0; j < n2; ++j) vacancies[j] = instance.capacity(hospital(j));

  // Tie index of the least preferred current assignee, -1 when none.
  auto worst_tie = [&](HospitalId h) {
    int worst = -1;
    for (ResidentId r : assignees[idx(h)]) worst = std::max(worst, lists.tie_of(h, r));
    return worst;
  };

  Worklist pending(n2, order);
  while (!pending.empty()) {
    const HospitalId h = hospital(pending.pop());
    while (true) {
      const auto active = lists.next_tie(h, worst_tie(h));
      const auto t = static_cast<int>(active.size());
      if (!(t > 0 && vacancies[idx(h)] >= t)) break;
      for (ResidentId r : active) {
        if (const auto prev = assigned[idx(r)]) {
          auto& list = assignees[idx(*prev)];
          list.erase(std::find(list.begin(), list.end(), r));
          ++vacancies[idx(*prev)];
          pending.push(idx(*prev));
        }
        assigned[idx(r)] = h;
        assignees[idx(h)].push_back(r);
        --vacancies[idx(h)];
        const auto list = lists.resident_list(r);
        const auto pos = std::find(list.begin(), list.end(), h);
        for (auto it = pos + 1; it < list.end(); ++it) {
          lists.remove(r, *it);
          pending.push(idx(*it));
        }
      }
    }
  }
  return lists.finish();
}

Reduction residents_apply(const Instance& instance, ReduceOrder order) {
  require_strict_residents(instance);
  const std::size_t n1 = instance.num_residents();
  const std::size_t n2 = instance.num_hospitals();
  ReducingLists lists(instance);
  std::vector<std::optional<HospitalId>> assigned(n1);
  std::vector<std::vector<ResidentId>> assignees(n2);

  Worklist free_residents(n1, order);
  while (!free_residents.empty()) {
    const ResidentId r = resident(free_residents.pop());
    if (assigned[idx(r)]) continue;
    const auto list = lists.resident_list(r);
    if (list.empty()) continue;
    const HospitalId h = list.front();
    assigned[idx(r)] = h;
    auto& current = assignees[idx(h)];
    current.push_back(r);
    const auto capacity = static_cast<std::size_t>(instance.capacity(h));
    if (current.size() < capacity) continue;

    // Tie index of the c-th choice assignee; with capacity zero every
    // resident on the list is a strict successor.
    int cutoff = -1;
    if (capacity > 0) {
      std::vector<int> ties;
      for (ResidentId a : current) ties.push_back(lists.tie_of(h, a));
      std::nth_element(ties.begin(), ties.begin() + static_cast<std::ptrdiff_t>(capacity - 1),
                       ties.end());
      cutoff = ties[capacity - 1];
    }
    for (const auto& tie : instance.prefs(h).ties) {
      for (ResidentId l : tie) {
        if (lists.tie_of(h, l) <= cutoff || lists.deleted(l, h)) continue;
        if (assigned[idx(l)] == h) {
          assigned[idx(l)].reset();
          current.erase(std::find(current.begin(), current.end(), l));
          free_residents.push(idx(l));
        }
        lists.remove(l, h);
      }
    }
  }
  return lists.finish();
}

Reduction reduce(const Instance& instance, ReduceOrder order) {
  auto offered = hospitals_offer(instance, order);
  auto applied = residents_apply(offered.reduced, order);
  std::vector<Pair> deleted = std::move(offered.deleted);
  deleted.insert(deleted.end(), applied.deleted.begin(), applied.deleted.end());
  std::sort(deleted.begin(), deleted.end());
  return {std::move(applied.reduced), std::move(deleted)};
}

}  // namespace hrt
