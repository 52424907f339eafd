#include "hrt/solver.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <string>

#include "hrt/heuristics.hpp"
#include "hrt/random.hpp"
#include "max_flow.hpp"

namespace hrt {

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kFeasibleTimeout:
      return "FeasibleTimeout";
  }
  return "?";
}

namespace {

using detail::MaxFlow;

// Admissible ranks for a hospital's worst assignee; kInfiniteRank stands for
// "under-subscribed". lo > 1 forces every resident ranked above lo to be
// matched at the hospital or better; hi < kInfiniteRank forces the hospital
// full with residents ranked at most hi.
struct Domain {
  Rank lo = 1;
  Rank hi = kInfiniteRank;
};

struct Node {
  std::vector<Domain> domains;
  std::size_t parent_bound;
};

class Relaxation {
 public:
  Relaxation(const Instance& instance, const RankTable& ranks)
      : instance_(instance), ranks_(ranks), flow_(0) {}

  // Optimal matching of the relaxation, or nullopt when no matching meets the
  // forced requirements.
  std::optional<Matching> solve(const std::vector<Domain>& domains) {
    const std::size_t n1 = instance_.num_residents();
    const std::size_t n2 = instance_.num_hospitals();
    constexpr int s = 0, t = 1, S = 2, T = 3;

    flow_ = MaxFlow(static_cast<int>(4 + n1 + n2));
    int required_residents = 0;
    int forced_posts = 0;
    edges_.clear();
    sink_edge_.assign(n2, -1);
    for (std::size_t i = 0; i < n1; ++i) {
      const ResidentId r = resident(i);
      Rank limit = kInfiniteRank;
      const auto& ties = instance_.prefs(r).ties;
      for (const auto& tie : ties) {
        for (HospitalId h : tie) {
          if (ranks_.of(h, r) < domains[idx(h)].lo) limit = std::min(limit, ranks_.of(r, h));
        }
      }
      bool any = false;
      for (const auto& tie : ties) {
        for (HospitalId h : tie) {
          if (ranks_.of(r, h) > limit || ranks_.of(h, r) > domains[idx(h)].hi) continue;
          edges_.push_back({r, h, flow_.add_edge(resident_node(i), hospital_node(idx(h)), 1)});
          any = true;
        }
      }
      if (limit != kInfiniteRank) {
        if (!any) return std::nullopt;
        flow_.add_edge(S, resident_node(i), 1);
        ++required_residents;
      } else if (any) {
        flow_.add_edge(s, resident_node(i), 1);
      }
    }
    for (std::size_t j = 0; j < n2; ++j) {
      const int cap = instance_.capacity(hospital(j));
      if (cap == 0) continue;
      if (domains[j].hi != kInfiniteRank) {
        flow_.add_edge(hospital_node(j), T, cap);
        forced_posts += cap;
      } else {
        sink_edge_[j] = flow_.add_edge(hospital_node(j), t, cap);
      }
    }
    if (required_residents > 0) flow_.add_edge(s, T, required_residents);
    if (forced_posts > 0) flow_.add_edge(S, t, forced_posts);
    const int demand = required_residents + forced_posts;
    const int back = flow_.add_edge(t, s, MaxFlow::kInfinite);
    if (demand > 0 && flow_.augment(S, T) < demand) return std::nullopt;
    flow_.disable(back);
    flow_.augment(s, t);

    Matching m(n1);
    for (const auto& e : edges_) {
      if (flow_.flow(e.id) > 0) m.assign(e.resident, e.hospital);
    }
    return m;
  }

  // Pairs usable by the last solve's network. With `optimal_only` set, only
  // pairs that some maximum-size solution uses are kept, and `closed` marks
  // the hospitals that are under-subscribed in every maximum-size solution.
  void usable(bool optimal_only, std::vector<std::vector<HospitalId>>& by_resident,
              std::vector<char>& closed) const {
    by_resident.assign(instance_.num_residents(), {});
    closed.assign(instance_.num_hospitals(), 0);
    std::vector<int> comp;
    if (optimal_only) comp = flow_.components();
    auto same = [&comp](int u, int v) {
      return comp[static_cast<std::size_t>(u)] == comp[static_cast<std::size_t>(v)];
    };
    for (const auto& e : edges_) {
      const int u = resident_node(idx(e.resident));
      const int v = hospital_node(idx(e.hospital));
      if (!optimal_only || flow_.flow(e.id) > 0 || same(u, v)) {
        by_resident[idx(e.resident)].push_back(e.hospital);
      }
    }
    if (!optimal_only) return;
    for (std::size_t j = 0; j < sink_edge_.size(); ++j) {
      const int id = sink_edge_[j];
      if (id < 0) continue;
      if (flow_.flow(id) < instance_.capacity(hospital(j)) && !same(hospital_node(j), 1)) {
        closed[j] = 1;
      }
    }
  }

 private:
  struct PairEdge {
    ResidentId resident;
    HospitalId hospital;
    int id;
  };

  static int resident_node(std::size_t i) { return static_cast<int>(4 + i); }
  int hospital_node(std::size_t j) const {
    return static_cast<int>(4 + instance_.num_residents() + j);
  }

  const Instance& instance_;
  const RankTable& ranks_;
  MaxFlow flow_;
  std::vector<PairEdge> edges_;
  std::vector<int> sink_edge_;  // h -> t for hospitals not forced full
};

struct Blocker {
  ResidentId resident;
  HospitalId hospital;
};

// Blocking pairs of m, hospital by hospital.
std::vector<Blocker> find_blockers(const Instance& instance, const RankTable& ranks,
                                   const Matching& m) {
  const std::size_t n2 = instance.num_hospitals();
  std::vector<int> load(n2, 0);
  std::vector<Rank> worst(n2, 0);
  for (const auto& [r, h] : m.pairs()) {
    ++load[idx(h)];
    worst[idx(h)] = std::max(worst[idx(h)], ranks.of(h, r));
  }
  std::vector<Blocker> out;
  for (std::size_t j = 0; j < n2; ++j) {
    const HospitalId h = hospital(j);
    const bool open = load[j] < instance.capacity(h);
    for (const auto& tie : instance.prefs(h).ties) {
      for (ResidentId r : tie) {
        if (!open && ranks.of(h, r) >= worst[j]) continue;
        const auto current = m.hospital_of(r);
        if (!current || ranks.of(r, h) < ranks.of(r, *current)) out.push_back({r, h});
      }
    }
  }
  return out;
}

class BranchAndBound {
 public:
  BranchAndBound(const IpModel& model, const SolveOptions& options)
      : model_(model),
        instance_(model.instance()),
        ranks_(model.ranks()),
        options_(options),
        relaxation_(instance_, ranks_),
        rng_(mix_seed(options.seed, 0x5eed)) {}

  SolveOutcome run() {
    const auto start = std::chrono::steady_clock::now();
    const auto deadline =
        start + std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(options_.time_limit_seconds));

    if (options_.initial_matching) {
      offer(*options_.initial_matching, /*checked=*/false);
    } else if (options_.warm_start) {
      offer(warm_start(instance_, options_.seed), /*checked=*/false);
    }
    outcome_.initial_size = best_ ? best_->size() : 0;

    std::vector<Node> stack;
    stack.push_back({std::vector<Domain>(instance_.num_hospitals()),
                     instance_.num_residents()});
    bool timed_out = false;
    std::size_t open_bound = 0;
    while (!stack.empty()) {
      if (std::chrono::steady_clock::now() >= deadline) {
        timed_out = true;
        for (const auto& n : stack) open_bound = std::max(open_bound, n.parent_bound);
        break;
      }
      Node node = std::move(stack.back());
      stack.pop_back();
      if (node.parent_bound < target()) continue;
      ++outcome_.nodes;

      auto branch = explore(node.domains);
      if (!branch) continue;
      const auto [h, split, bound] = *branch;
      Node full = node;  // worst assignee ranked at most `split`
      full.domains[idx(h)].hi = split;
      full.parent_bound = bound;
      Node forced = std::move(node);  // residents ranked up to `split` placed
      forced.domains[idx(h)].lo = split + 1;
      forced.parent_bound = bound;
      // The "full" side tends to reach large stable matchings sooner.
      stack.push_back(std::move(forced));
      stack.push_back(std::move(full));
    }

    if (!best_) {
      // Only reachable on timeout without a warm start.
      offer(warm_start(instance_, options_.seed), /*checked=*/false);
    }
    if (options_.lower_bound && !timed_out && best_->size() < *options_.lower_bound) {
      throw std::logic_error("lower bound " + std::to_string(*options_.lower_bound) +
                             " is not attained by any stable matching");
    }
    outcome_.matching = *best_;
    outcome_.objective = best_->size();
    outcome_.status = timed_out ? SolveStatus::kFeasibleTimeout : SolveStatus::kOptimal;
    outcome_.proof_bound = timed_out ? std::max(open_bound, outcome_.objective)
                                     : outcome_.objective;
    outcome_.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return std::move(outcome_);
  }

 private:
  // Solves the node's relaxation and narrows its domains until a fixpoint:
  // a resident that can never be placed at h or better forces h full with
  // residents it ranks no worse. When the bound meets the target, only pairs
  // and loads realisable by a maximum-size solution count. Returns nullopt
  // when the node cannot reach the target.
  std::optional<Matching> tighten(std::vector<Domain>& domains) {
    for (;;) {
      auto relaxed = relaxation_.solve(domains);
      if (!relaxed || relaxed->size() < target()) return std::nullopt;
      relaxation_.usable(relaxed->size() == target(), usable_, closed_);
      bool changed = false;
      for (std::size_t j = 0; j < closed_.size(); ++j) {
        if (closed_[j] && domains[j].lo != kInfiniteRank) {
          domains[j].lo = kInfiniteRank;
          changed = true;
        }
      }
      for (std::size_t i = 0; i < usable_.size(); ++i) {
        const ResidentId r = resident(i);
        Rank best = kInfiniteRank;
        for (HospitalId h : usable_[i]) best = std::min(best, ranks_.of(r, h));
        for (const auto& tie : instance_.prefs(r).ties) {
          if (ranks_.of(r, tie.front()) >= best) break;
          for (HospitalId h : tie) {
            Domain& d = domains[idx(h)];
            const Rank cut = ranks_.of(h, r);
            if (cut < d.hi) {
              d.hi = cut;
              changed = true;
            }
          }
        }
      }
      for (const Domain& d : domains) {
        if (d.lo > d.hi) return std::nullopt;
      }
      if (!changed) return relaxed;
    }
  }

  struct Branch {
    HospitalId hospital;
    Rank split;
    std::size_t bound;
  };

  // Settles the node (stable relaxation, or no solution reaching the target)
  // or returns the split to branch on.
  std::optional<Branch> explore(std::vector<Domain>& domains) {
    auto relaxed = tighten(domains);
    if (!relaxed) return std::nullopt;
    const auto blockers = find_blockers(instance_, ranks_, *relaxed);
    if (blockers.empty()) {
      offer(*relaxed, /*checked=*/true);
      return std::nullopt;
    }
    const Blocker b = choose(blockers);
    const Rank split = ranks_.of(b.hospital, b.resident);
    const Domain d = domains[idx(b.hospital)];
    if (split < d.lo || split >= d.hi) {
      throw std::logic_error("blocking pair outside its hospital's domain");
    }
    return Branch{b.hospital, split, relaxed->size()};
  }

  // Smallest objective worth searching for.
  std::size_t target() const {
    std::size_t t = best_ ? best_->size() + 1 : 0;
    if (options_.lower_bound) t = std::max(t, *options_.lower_bound);
    return t;
  }

  Blocker choose(const std::vector<Blocker>& blockers) {
    // Worst-ranked blocker at the hospital with the most blocking pairs.
    std::vector<int> count(instance_.num_hospitals(), 0);
    for (const auto& b : blockers) ++count[idx(b.hospital)];
    const int most = *std::max_element(count.begin(), count.end());
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < count.size(); ++j) {
      if (count[j] == most) candidates.push_back(j);
    }
    const HospitalId h = hospital(candidates[rng_.below(candidates.size())]);
    const Blocker* pick = nullptr;
    for (const auto& b : blockers) {
      if (b.hospital != h) continue;
      if (!pick || ranks_.of(h, b.resident) > ranks_.of(h, pick->resident)) pick = &b;
    }
    return *pick;
  }

  void offer(const Matching& m, bool checked) {
    if (!checked) {
      if (!validate_matching(instance_, m).empty() || !is_stable(instance_, ranks_, m)) {
        throw std::invalid_argument("initial matching is not a stable matching");
      }
    }
    const auto x = model_.encode(m);
    if (!model_.is_feasible(x)) {
      throw std::logic_error("stable matching violates a model row");
    }
    if (options_.on_feasible) options_.on_feasible(x);
    if (!best_ || m.size() > best_->size()) best_ = m;
  }

  const IpModel& model_;
  const Instance& instance_;
  const RankTable& ranks_;
  const SolveOptions& options_;
  Relaxation relaxation_;
  std::vector<std::vector<HospitalId>> usable_;
  std::vector<char> closed_;
  Rng rng_;
  std::optional<Matching> best_;
  SolveOutcome outcome_;
};

}  // namespace

SolveOutcome solve(const IpModel& model, const SolveOptions& options) {
  if (!(options.time_limit_seconds > 0.0)) {
    throw std::invalid_argument("time limit must be positive");
  }
  return BranchAndBound(model, options).run();
}

Matching extract_matching(const IpModel& model, std::span<const std::uint8_t> x) {
  if (x.size() != model.num_columns()) {
    throw std::invalid_argument("assignment vector has wrong length");
  }
  if (std::any_of(x.begin(), x.end(), [](std::uint8_t v) { return v > 1; })) {
    throw std::invalid_argument("assignment vector is not 0/1");
  }
  const auto violated = model.violated_rows(x);
  if (!violated.empty()) {
    throw std::invalid_argument("assignment violates row " +
                                model.constraints()[violated.front()].name());
  }
  Matching m(model.instance().num_residents());
  for (const auto& v : model.variables()) {
    if (x[static_cast<std::size_t>(v.column)]) m.assign(v.resident, v.hospital);
  }
  return m;
}

std::size_t upper_bound(const IpModel& model, std::span<const std::int8_t> fixing) {
  if (fixing.size() != model.num_columns()) {
    throw std::invalid_argument("fixing has wrong length");
  }
  const Instance& instance = model.instance();
  const std::size_t n1 = instance.num_residents();
  const std::size_t n2 = instance.num_hospitals();
  std::vector<int> residual(n2);
  for (std::size_t j = 0; j < n2; ++j) residual[j] = instance.capacity(hospital(j));
  std::vector<char> placed(n1, 0);
  std::size_t fixed = 0;
  for (const auto& v : model.variables()) {
    if (fixing[static_cast<std::size_t>(v.column)] != 1) continue;
    if (placed[idx(v.resident)] || residual[idx(v.hospital)] == 0) {
      throw std::invalid_argument("fixing violates a resident or capacity row");
    }
    placed[idx(v.resident)] = 1;
    --residual[idx(v.hospital)];
    ++fixed;
  }
  const int s = 0, t = 1;
  MaxFlow flow(static_cast<int>(2 + n1 + n2));
  for (std::size_t i = 0; i < n1; ++i) {
    if (!placed[i]) flow.add_edge(s, static_cast<int>(2 + i), 1);
  }
  for (const auto& v : model.variables()) {
    if (fixing[static_cast<std::size_t>(v.column)] == 0 || placed[idx(v.resident)]) continue;
    flow.add_edge(static_cast<int>(2 + idx(v.resident)),
                  static_cast<int>(2 + n1 + idx(v.hospital)), 1);
  }
  for (std::size_t j = 0; j < n2; ++j) {
    if (residual[j] > 0) flow.add_edge(static_cast<int>(2 + n1 + j), t, residual[j]);
  }
  return fixed + static_cast<std::size_t>(flow.augment(s, t));
}

}  // namespace hrt
