#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

#include "mvote/rational.hpp"

namespace mvote::detail {

/// Dinic's algorithm over arbitrary-precision integer capacities.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : adj_(nodes) {}

  /// Returns the edge handle used by flow_on().
  std::size_t add_edge(std::size_t from, std::size_t to, const Integer& cap) {
    const std::size_t id = edges_.size();
    edges_.push_back({to, cap, 0});
    adj_[from].push_back(id);
    edges_.push_back({from, 0, 0});
    adj_[to].push_back(id + 1);
    return id;
  }

  Integer run(std::size_t s, std::size_t t) {
    Integer total = 0;
    while (bfs(s, t)) {
      iter_.assign(adj_.size(), 0);
      for (;;) {
        Integer pushed = dfs(s, t, Integer(-1));
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  const Integer& flow_on(std::size_t edge) const { return edges_[edge].flow; }

  /// Nodes reachable from s in the residual graph after run().
  std::vector<bool> source_side(std::size_t s) const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t id : adj_[u]) {
        const Edge& e = edges_[id];
        if (!seen[e.to] && e.cap - e.flow > 0) {
          seen[e.to] = true;
          stack.push_back(e.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Edge {
    std::size_t to;
    Integer cap;
    Integer flow;
  };

  bool bfs(std::size_t s, std::size_t t) {
    level_.assign(adj_.size(), -1);
    level_[s] = 0;
    std::queue<std::size_t> q;
    q.push(s);
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t id : adj_[u]) {
        const Edge& e = edges_[id];
        if (level_[e.to] < 0 && e.cap - e.flow > 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  // limit < 0 stands for "no limit".
  Integer dfs(std::size_t u, std::size_t t, const Integer& limit) {
    if (u == t) return limit;
    for (std::size_t& k = iter_[u]; k < adj_[u].size(); ++k) {
      const std::size_t id = adj_[u][k];
      Edge& e = edges_[id];
      Integer residual = e.cap - e.flow;
      if (residual <= 0 || level_[e.to] != level_[u] + 1) continue;
      Integer next_limit = (limit < 0 || residual < limit) ? residual : limit;
      Integer pushed = dfs(e.to, t, next_limit);
      if (pushed > 0) {
        e.flow += pushed;
        edges_[id ^ 1].flow -= pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Edge> edges_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

}  // namespace mvote::detail
