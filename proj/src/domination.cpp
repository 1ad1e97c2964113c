#include "assocperc/domination.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "assocperc/error.hpp"

namespace assocperc {
namespace {

class Dinic {
 public:
  explicit Dinic(int n) : graph_(n), level_(n), next_(n) {}

  int add_edge(int from, int to, double cap) {
    graph_[from].push_back({to, static_cast<int>(graph_[to].size()), cap});
    graph_[to].push_back({from, static_cast<int>(graph_[from].size()) - 1, 0.0});
    return static_cast<int>(graph_[from].size()) - 1;
  }

  double max_flow(int s, int t) {
    double total = 0.0;
    while (bfs(s, t)) {
      std::fill(next_.begin(), next_.end(), 0);
      while (true) {
        const double pushed = dfs(s, t, std::numeric_limits<double>::infinity());
        if (pushed <= kEps) break;
        total += pushed;
      }
    }
    return total;
  }

  // Flow on edge `index` out of `from`.
  double flow(int from, int index) const {
    const Edge& e = graph_[from][index];
    return graph_[e.to][e.rev].cap;
  }
  int target(int from, int index) const { return graph_[from][index].to; }

 private:
  struct Edge {
    int to;
    int rev;
    double cap;
  };
  static constexpr double kEps = 1e-15;

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<int> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (const Edge& e : graph_[u]) {
        if (e.cap > kEps && level_[e.to] < 0) {
          level_[e.to] = level_[u] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  double dfs(int u, int t, double limit) {
    if (u == t) return limit;
    for (int& i = next_[u]; i < static_cast<int>(graph_[u].size()); ++i) {
      Edge& e = graph_[u][i];
      if (e.cap <= kEps || level_[e.to] != level_[u] + 1) continue;
      const double pushed = dfs(e.to, t, std::min(limit, e.cap));
      if (pushed > kEps) {
        e.cap -= pushed;
        graph_[e.to][e.rev].cap += pushed;
        return pushed;
      }
    }
    return 0.0;
  }

  std::vector<std::vector<Edge>> graph_;
  std::vector<int> level_;
  std::vector<int> next_;
};

}  // namespace

DominationResult domination_flow(const FiniteDistribution& a, const FiniteDistribution& b) {
  require(a.width == b.width, "distributions live on different widths");
  a.validate(1e-9);
  b.validate(1e-9);
  if (a.support.size() > kMaxDominationSupport || b.support.size() > kMaxDominationSupport) {
    throw GuardExceeded("domination check supports are limited to " +
                        std::to_string(kMaxDominationSupport) + " states");
  }
  const int na = static_cast<int>(a.support.size());
  const int nb = static_cast<int>(b.support.size());
  const int source = na + nb;
  const int sink = source + 1;
  Dinic net(na + nb + 2);
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < na; ++i) {
    if (a.probs[i] > 0.0) net.add_edge(source, i, a.probs[i]);
  }
  for (int j = 0; j < nb; ++j) {
    if (b.probs[j] > 0.0) net.add_edge(na + j, sink, b.probs[j]);
  }
  std::vector<std::vector<int>> arcs(na);
  for (int i = 0; i < na; ++i) {
    for (int j = 0; j < nb; ++j) {
      if ((a.support[i] & ~b.support[j]) == 0) arcs[i].push_back(net.add_edge(i, na + j, inf));
    }
  }
  DominationResult out;
  out.flow = net.max_flow(source, sink);
  out.dominated = out.flow >= a.total() - kDominationTolerance;
  for (int i = 0; i < na; ++i) {
    for (int idx : arcs[i]) {
      const double f = net.flow(i, idx);
      if (f > 0.0) out.coupling.emplace_back(a.support[i], b.support[net.target(i, idx) - na], f);
    }
  }
  return out;
}

}  // namespace assocperc
