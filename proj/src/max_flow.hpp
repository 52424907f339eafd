#pragma once

// Dinic max-flow on small integer networks; internal to the solver.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace hrt::detail {

class MaxFlow {
 public:
  static constexpr int kInfinite = std::numeric_limits<int>::max() / 4;

  explicit MaxFlow(int num_nodes) : adjacency_(static_cast<std::size_t>(num_nodes)) {}

  int add_edge(int from, int to, int capacity) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({to, capacity});
    adjacency_[static_cast<std::size_t>(from)].push_back(id);
    edges_.push_back({from, 0});
    adjacency_[static_cast<std::size_t>(to)].push_back(id + 1);
    return id;
  }

  // Flow currently carried by edge `id` (as returned by add_edge).
  int flow(int id) const { return edges_[static_cast<std::size_t>(id ^ 1)].residual; }

  // Removes edge `id` and its current flow from the network.
  void disable(int id) {
    edges_[static_cast<std::size_t>(id)].residual = 0;
    edges_[static_cast<std::size_t>(id ^ 1)].residual = 0;
  }

  // Strongly connected component of every node in the residual graph. An
  // edge whose endpoints share a component can change its flow without
  // changing the flow value.
  std::vector<int> components() const {
    const std::size_t n = adjacency_.size();
    std::vector<int> comp(n, -1), index(n, -1), low(n, 0);
    std::vector<int> stack;
    std::vector<char> on_stack(n, 0);
    std::vector<std::pair<int, std::size_t>> frames;
    int counter = 0, next_comp = 0;
    for (std::size_t root = 0; root < n; ++root) {
      if (index[root] >= 0) continue;
      frames.push_back({static_cast<int>(root), 0});
      while (!frames.empty()) {
        auto& [u, k] = frames.back();
        const auto su = static_cast<std::size_t>(u);
        if (k == 0 && index[su] < 0) {
          index[su] = low[su] = counter++;
          stack.push_back(u);
          on_stack[su] = 1;
        }
        const auto& adj = adjacency_[su];
        bool descended = false;
        while (k < adj.size()) {
          const Edge& e = edges_[static_cast<std::size_t>(adj[k++])];
          if (e.residual <= 0) continue;
          const auto sv = static_cast<std::size_t>(e.to);
          if (index[sv] < 0) {
            frames.push_back({e.to, 0});
            descended = true;
            break;
          }
          if (on_stack[sv]) low[su] = std::min(low[su], index[sv]);
        }
        if (descended) continue;
        if (low[su] == index[su]) {
          int v;
          do {
            v = stack.back();
            stack.pop_back();
            on_stack[static_cast<std::size_t>(v)] = 0;
            comp[static_cast<std::size_t>(v)] = next_comp;
          } while (v != u);
          ++next_comp;
        }
        const int done = u;
        frames.pop_back();
        if (!frames.empty()) {
          const auto sp = static_cast<std::size_t>(frames.back().first);
          low[sp] = std::min(low[sp], low[static_cast<std::size_t>(done)]);
        }
      }
    }
    return comp;
  }

  // Augments the current flow to a maximum s-t flow; returns the amount added.
  int augment(int source, int sink) {
    int total = 0;
    while (build_levels(source, sink)) {
      std::fill(cursor_.begin(), cursor_.end(), 0);
      while (const int pushed = push(source, sink, kInfinite)) total += pushed;
    }
    return total;
  }

 private:
  struct Edge {
    int to;
    int residual;
  };

  bool build_levels(int source, int sink) {
    level_.assign(adjacency_.size(), -1);
    cursor_.assign(adjacency_.size(), 0);
    queue_.clear();
    queue_.push_back(source);
    level_[static_cast<std::size_t>(source)] = 0;
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const int u = queue_[head];
      for (int id : adjacency_[static_cast<std::size_t>(u)]) {
        const Edge& e = edges_[static_cast<std::size_t>(id)];
        if (e.residual > 0 && level_[static_cast<std::size_t>(e.to)] < 0) {
          level_[static_cast<std::size_t>(e.to)] = level_[static_cast<std::size_t>(u)] + 1;
          queue_.push_back(e.to);
        }
      }
    }
    return level_[static_cast<std::size_t>(sink)] >= 0;
  }

  int push(int u, int sink, int limit) {
    if (u == sink) return limit;
    auto& adj = adjacency_[static_cast<std::size_t>(u)];
    for (std::size_t& k = cursor_[static_cast<std::size_t>(u)]; k < adj.size(); ++k) {
      const int id = adj[k];
      Edge& e = edges_[static_cast<std::size_t>(id)];
      if (e.residual <= 0 ||
          level_[static_cast<std::size_t>(e.to)] != level_[static_cast<std::size_t>(u)] + 1) {
        continue;
      }
      if (const int got = push(e.to, sink, std::min(limit, e.residual))) {
        e.residual -= got;
        edges_[static_cast<std::size_t>(id ^ 1)].residual += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<std::vector<int>> adjacency_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> cursor_;
  std::vector<int> queue_;
};

}  // namespace hrt::detail
