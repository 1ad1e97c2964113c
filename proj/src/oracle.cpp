#include "assocperc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <queue>
#include <string>

#include "assocperc/error.hpp"

namespace assocperc {
namespace {

// The box as a plain vertex set of Z^2 with levels x + y = const.
struct LatticeBox {
  int lo = 0;     // smallest coordinate considered
  int span = 0;   // coordinates lo .. lo + span - 1
  std::vector<int> index;  // vertex index or -1, row-major in (x, y)
  std::vector<std::vector<std::pair<int, int>>> levels;  // sorted by x

  int at(int x, int y) const {
    const int i = x - lo, j = y - lo;
    if (i < 0 || j < 0 || i >= span || j >= span) return -1;
    return index[static_cast<std::size_t>(i) * span + j];
  }
};

LatticeBox build_box(int w, int ell) {
  LatticeBox box;
  box.lo = -w;
  box.span = ell + 2 * w + 1;
  box.index.assign(static_cast<std::size_t>(box.span) * box.span, -1);
  std::map<int, std::vector<std::pair<int, int>>> by_level;
  for (int x = -w; x <= ell + w; ++x) {
    for (int y = -w; y <= ell + w; ++y) {
      bool inside = false;
      for (int k = 0; k <= ell; ++k) inside |= std::abs(x - k) + std::abs(y - k) <= w;
      if (inside) by_level[x + y].emplace_back(x, y);
    }
  }
  int next_index = 0;
  for (auto& [s, vertices] : by_level) {
    std::sort(vertices.begin(), vertices.end());
    for (const auto& [x, y] : vertices) {
      box.index[static_cast<std::size_t>(x - box.lo) * box.span + (y - box.lo)] = next_index++;
    }
    box.levels.push_back(vertices);
  }
  return box;
}

}  // namespace

std::vector<std::uint64_t> brute_force_survival_counts(int w, int ell) {
  require(w >= 1, "box width must be at least 1");
  require(ell >= 0, "box length must be nonnegative");
  const LatticeBox box = build_box(w, ell);
  const int bottom = static_cast<int>(box.levels.front().size());
  int total = 0;
  for (const auto& level : box.levels) total += static_cast<int>(level.size());
  const int n = total - bottom;
  if (n > kMaxOracleBits) {
    throw GuardExceeded("brute-force survival over " + std::to_string(n) +
                        " site bits exceeds the guard of " + std::to_string(kMaxOracleBits));
  }
  std::vector<std::uint64_t> counts(n + 1, 0);
  std::vector<std::pair<int, int>> cur, next, fan;
  for (std::uint64_t assignment = 0; assignment < (std::uint64_t{1} << n); ++assignment) {
    auto z = [&](int x, int y) { return (assignment >> (box.at(x, y) - bottom)) & 1U; };
    cur = box.levels.front();
    for (std::size_t lv = 0; lv + 1 < box.levels.size() && !cur.empty(); ++lv) {
      next.clear();
      std::size_t i = 0;
      while (i < cur.size()) {
        // Maximal run of diagonal neighbours (x, y), (x+1, y-1), ...
        std::size_t j = i + 1;
        while (j < cur.size() && cur[j].first == cur[j - 1].first + 1) ++j;
        fan.clear();
        for (std::size_t t = i; t < j; ++t) {
          const auto [x, y] = cur[t];
          if (box.at(x + 1, y) >= 0) fan.emplace_back(x + 1, y);
          if (box.at(x, y + 1) >= 0) fan.emplace_back(x, y + 1);
        }
        std::sort(fan.begin(), fan.end());
        fan.erase(std::unique(fan.begin(), fan.end()), fan.end());
        const bool full = fan.size() == j - i + 1;
        bool dies = full;
        if (full) {
          for (std::size_t t = 0; t + 1 < fan.size(); ++t) {
            if (z(fan[t].first, fan[t].second)) dies = false;
          }
        }
        if (!dies) {
          for (const auto& v : fan) {
            if (z(v.first, v.second)) next.push_back(v);
          }
        }
        i = j;
      }
      std::sort(next.begin(), next.end());
      cur.swap(next);
    }
    if (!cur.empty()) ++counts[std::popcount(assignment)];
  }
  return counts;
}

double brute_force_survival(int w, int ell, double p) {
  require_probability(p);
  const std::vector<std::uint64_t> counts = brute_force_survival_counts(w, ell);
  const int n = static_cast<int>(counts.size()) - 1;
  double q = 0.0;
  for (int k = 0; k <= n; ++k) {
    q += static_cast<double>(counts[k]) * std::pow(p, k) * std::pow(1.0 - p, n - k);
  }
  return q;
}

SmallGraph SmallGraph::from_edges(const std::vector<std::pair<int, int>>& edges) {
  require(!edges.empty(), "graph needs at least one edge");
  require(static_cast<int>(edges.size()) <= 32, "too many edges");
  std::map<int, int> ids;
  for (const auto& [u, v] : edges) {
    require(u != v, "self-loops are not supported");
    ids.emplace(u, 0);
    ids.emplace(v, 0);
  }
  int next = 0;
  for (auto& [label, id] : ids) id = next++;
  SmallGraph g;
  g.num_vertices = next;
  std::vector<std::vector<int>> adj(next);
  for (const auto& [u, v] : edges) {
    g.edges.emplace_back(ids[u], ids[v]);
    adj[ids[u]].push_back(ids[v]);
    adj[ids[v]].push_back(ids[u]);
  }
  std::vector<std::vector<int>> vd(next, std::vector<int>(next, kUnreachable));
  for (int s = 0; s < next; ++s) {
    std::queue<int> q;
    vd[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u]) {
        if (vd[s][v] == kUnreachable) {
          vd[s][v] = vd[s][u] + 1;
          q.push(v);
        }
      }
    }
  }
  const int m = static_cast<int>(g.edges.size());
  g.edge_distance.assign(m, std::vector<int>(m, kUnreachable));
  for (int e = 0; e < m; ++e) {
    for (int f = 0; f < m; ++f) {
      const auto [a, b] = g.edges[e];
      const auto [c, d] = g.edges[f];
      g.edge_distance[e][f] = std::min({vd[a][c], vd[a][d], vd[b][c], vd[b][d]});
    }
  }
  return g;
}

SmallGraph SmallGraph::from_distances(std::vector<std::vector<int>> distances) {
  const std::size_t m = distances.size();
  require(m >= 1 && m <= 32, "graph needs between 1 and 32 edges");
  for (std::size_t e = 0; e < m; ++e) {
    require(distances[e].size() == m, "distance matrix must be square");
    require(distances[e][e] == 0, "an edge is at distance 0 from itself");
    for (std::size_t f = 0; f < m; ++f) {
      require(distances[e][f] >= 0, "distances must be nonnegative");
      require(distances[e][f] == distances[f][e], "distance matrix must be symmetric");
    }
  }
  SmallGraph g;
  g.edges.assign(m, {-1, -1});
  g.edge_distance = std::move(distances);
  return g;
}

int SmallGraph::distance(std::uint32_t set_a, std::uint32_t set_b) const {
  int d = kUnreachable;
  for (int e = 0; e < num_edges(); ++e) {
    if (!((set_a >> e) & 1U)) continue;
    for (int f = 0; f < num_edges(); ++f) {
      if ((set_b >> f) & 1U) d = std::min(d, edge_distance[e][f]);
    }
  }
  return d;
}

std::uint32_t SmallGraph::closure(std::uint32_t set, int k) const {
  if (k == 0) return set;
  std::uint32_t out = 0;
  for (int e = 0; e < num_edges(); ++e) {
    if (distance(1U << e, set) < k) out |= 1U << e;
  }
  return out;
}

void JointTable::validate(double tolerance) const {
  require(num_edges >= 0, "negative edge count");
  if (num_edges > kMaxTableEdges) {
    throw GuardExceeded("joint tables are limited to " + std::to_string(kMaxTableEdges) +
                        " edges");
  }
  require(probs.size() == (std::size_t{1} << num_edges), "table size must be 2^|E|");
  double total = 0.0;
  for (double q : probs) {
    require(q >= 0.0, "negative probability in table");
    total += q;
  }
  require(std::abs(total - 1.0) <= tolerance, "table mass " + std::to_string(total) + " is not 1");
}

JointTable product_table(int num_edges, double p) {
  require_probability(p);
  std::vector<double> bit_probs(num_edges, p);
  return table_from_bits(num_edges, bit_probs, [](std::uint32_t bits) { return bits; });
}

const std::vector<std::uint64_t>& upsets(int m) {
  require(m >= 0 && m <= kMaxTableEdges, "up-set enumeration is limited to 5 coordinates");
  static const std::vector<std::vector<std::uint64_t>> table = [] {
    std::vector<std::vector<std::uint64_t>> t(kMaxTableEdges + 1);
    t[0] = {0, 1};
    for (int k = 1; k <= kMaxTableEdges; ++k) {
      const int half = 1 << (k - 1);
      for (std::uint64_t lo : t[k - 1]) {
        for (std::uint64_t hi : t[k - 1]) {
          if ((lo & ~hi) == 0) t[k].push_back(lo | (hi << half));
        }
      }
    }
    return t;
  }();
  return table[m];
}

namespace {

// Index of the restriction of `config` to the coordinates in `coords`.
std::uint32_t project(std::uint32_t config, std::uint32_t coords) {
  std::uint32_t out = 0;
  int pos = 0;
  for (std::uint32_t rest = coords; rest != 0; rest &= rest - 1, ++pos) {
    if ((config >> std::countr_zero(rest)) & 1U) out |= 1U << pos;
  }
  return out;
}

double mass_of(const std::vector<double>& probs, std::uint64_t set) {
  double s = 0.0;
  for (; set != 0; set &= set - 1) s += probs[std::countr_zero(set)];
  return s;
}

constexpr double kTol = 1e-12;

}  // namespace

bool check_positive_association(const JointTable& table) {
  table.validate();
  const auto& ups = upsets(table.num_edges);
  std::vector<double> pu(ups.size());
  for (std::size_t i = 0; i < ups.size(); ++i) pu[i] = mass_of(table.probs, ups[i]);
  for (std::size_t i = 0; i < ups.size(); ++i) {
    for (std::size_t j = i; j < ups.size(); ++j) {
      if (mass_of(table.probs, ups[i] & ups[j]) < pu[i] * pu[j] - kTol) return false;
    }
  }
  return true;
}

bool check_k_independence(const JointTable& table, const SmallGraph& graph, int k) {
  table.validate();
  require(graph.num_edges() == table.num_edges, "graph and table disagree on |E|");
  require(k >= 0, "k must be nonnegative");
  const std::uint32_t all = (1U << table.num_edges) - 1;
  for (std::uint32_t f1 = 1; f1 <= all; ++f1) {
    for (std::uint32_t f2 = f1 + 1; f2 <= all; ++f2) {
      if ((f1 & f2) != 0 || graph.distance(f1, f2) < k) continue;
      const std::uint32_t both = f1 | f2;
      std::vector<double> joint(std::size_t{1} << std::popcount(both), 0.0);
      std::vector<double> m1(std::size_t{1} << std::popcount(f1), 0.0);
      std::vector<double> m2(std::size_t{1} << std::popcount(f2), 0.0);
      for (std::uint32_t x = 0; x <= all; ++x) {
        joint[project(x, both)] += table.probs[x];
        m1[project(x, f1)] += table.probs[x];
        m2[project(x, f2)] += table.probs[x];
      }
      for (std::uint32_t y = 0; y < joint.size(); ++y) {
        // y indexes both; split it back into its f1 and f2 parts.
        std::uint32_t config = 0;
        int pos = 0;
        for (std::uint32_t rest = both; rest != 0; rest &= rest - 1, ++pos) {
          if ((y >> pos) & 1U) config |= 1U << std::countr_zero(rest);
        }
        if (std::abs(joint[y] - m1[project(config, f1)] * m2[project(config, f2)]) > kTol) {
          return false;
        }
      }
    }
  }
  return true;
}

bool check_lemma1_condition_ii(const JointTable& table, const SmallGraph& graph, int k) {
  table.validate();
  require(graph.num_edges() == table.num_edges, "graph and table disagree on |E|");
  require(k >= 0, "k must be nonnegative");
  const std::uint32_t all = (1U << table.num_edges) - 1;
  for (std::uint32_t f = 0; f <= all; ++f) {
    const std::uint32_t cl = graph.closure(f, k) | f;
    const std::uint32_t rest = all & ~cl;
    const auto& a_sets = upsets(std::popcount(f));
    const auto& u_sets = upsets(std::popcount(cl));
    const std::uint32_t slices = 1U << std::popcount(rest);
    const std::uint32_t cl_configs = 1U << std::popcount(cl);
    std::vector<double> g(cl_configs);
    for (std::uint64_t a : a_sets) {
      double pa = 0.0;
      for (std::uint32_t x = 0; x <= all; ++x) {
        if ((a >> project(x, f)) & 1U) pa += table.probs[x];
      }
      // B may pick a different up-set of the closure coordinates on each slice
      // of the remaining coordinates, so the worst case separates by slice.
      double worst = 0.0;
      for (std::uint32_t eta = 0; eta < slices; ++eta) {
        std::fill(g.begin(), g.end(), 0.0);
        for (std::uint32_t x = 0; x <= all; ++x) {
          if (project(x, rest) != eta) continue;
          const double in_a = ((a >> project(x, f)) & 1U) ? 1.0 : 0.0;
          g[project(x, cl)] += table.probs[x] * (in_a - pa);
        }
        double best = 0.0;
        for (std::uint64_t u : u_sets) best = std::min(best, mass_of(g, u));
        worst += best;
      }
      if (worst < -kTol) return false;
    }
  }
  return true;
}

double conditional_probability(const JointTable& table, const std::vector<EdgeConstraint>& event,
                               const std::vector<EdgeConstraint>& given) {
  table.validate();
  auto holds = [](std::uint32_t x, const std::vector<EdgeConstraint>& cs) {
    for (const auto& c : cs) {
      if ((((x >> c.edge) & 1U) != 0) != c.open) return false;
    }
    return true;
  };
  for (const auto& c : event) require(c.edge >= 0 && c.edge < table.num_edges, "edge out of range");
  for (const auto& c : given) require(c.edge >= 0 && c.edge < table.num_edges, "edge out of range");
  double joint = 0.0, base = 0.0;
  for (std::uint32_t x = 0; x < table.probs.size(); ++x) {
    if (!holds(x, given)) continue;
    base += table.probs[x];
    if (holds(x, event)) joint += table.probs[x];
  }
  require(base > 0.0, "conditioning event has probability zero");
  return joint / base;
}

JointTable example1_table() {
  const std::vector<std::pair<int, int>> cycle{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  return table_from_bits(4, std::vector<double>(4, 0.5), [&](std::uint32_t x) {
    std::uint32_t config = 0;
    for (int e = 0; e < 4; ++e) {
      const auto [i, j] = cycle[e];
      if (((x >> i) & 1U) == ((x >> j) & 1U)) config |= 1U << e;
    }
    return config;
  });
}

SmallGraph four_cycle() { return SmallGraph::from_edges({{1, 2}, {2, 3}, {3, 4}, {4, 1}}); }

DominationBound domination_bound(double p, int delta, int k) {
  require_probability(p);
  require(delta >= 2, "maximum degree must be at least 2");
  require(k >= 1, "k must be at least 1");
  const double exponent = 2.0 * std::pow(delta - 1.0, k) + 1.0;
  auto rho = [&](double x) {
    const double root = 1.0 - std::pow(1.0 - x, 1.0 / exponent);
    return root * root;
  };
  return {rho(p), 1.0 - rho(1.0 - p)};
}

double branching_bound_formula(int n, double p, int i) {
  require(n >= 1, "dimension must be at least 1");
  require(i >= 0, "level must be nonnegative");
  require_probability(p);
  const double base = n * (n + 1) / 2.0 * p * p;
  return std::min(1.0, std::pow(base, i));
}

}  // namespace assocperc
