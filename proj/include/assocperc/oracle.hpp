#pragma once

// Brute-force ground truth on tiny instances.
//
// brute_force_survival rebuilds the box directly in Z^2 and enumerates every
// assignment of the chain's site bits. The remaining checks work on explicit
// joint laws of at most five edges and enumerate all increasing events.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace assocperc {

inline constexpr int kMaxOracleBits = 24;
inline constexpr int kMaxTableEdges = 5;

// Survival probability of the chain from the full bottom level of the box of
// width w and length ell, by exhaustive enumeration. Throws GuardExceeded if
// the box has more than kMaxOracleBits vertices above the bottom level.
double brute_force_survival(int w, int ell, double p);

// Number of surviving site assignments by number of open sites; survival
// probability is sum_k counts[k] p^k (1-p)^(n-k).
std::vector<std::uint64_t> brute_force_survival_counts(int w, int ell);

struct SmallGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  // Edge-to-edge graph distance; kUnreachable if the edges lie in different
  // components.
  std::vector<std::vector<int>> edge_distance;

  static constexpr int kUnreachable = 1 << 20;

  // Vertex labels are arbitrary integers; edges are undirected.
  static SmallGraph from_edges(const std::vector<std::pair<int, int>>& edges);
  // Edge distances given directly; must be symmetric with a zero diagonal.
  static SmallGraph from_distances(std::vector<std::vector<int>> distances);

  int num_edges() const { return static_cast<int>(edges.size()); }
  int distance(std::uint32_t set_a, std::uint32_t set_b) const;
  // {e : d(e, F) < k} for k >= 1, F itself for k = 0.
  std::uint32_t closure(std::uint32_t set, int k) const;
};

// Law on {0,1}^E: probs[x] is the probability that edge e is open exactly
// when bit e of x is set.
struct JointTable {
  int num_edges = 0;
  std::vector<double> probs;

  // Throws InvalidParameter on size mismatch, negative entries or total mass
  // off 1 by more than `tolerance`; GuardExceeded above kMaxTableEdges.
  void validate(double tolerance = 1e-12) const;
};

JointTable product_table(int num_edges, double p);

// Law of edge statuses given as functions of independent Bernoulli bits.
// edge_fn(bits) returns the edge configuration for the bit vector `bits`.
template <class Fn>
JointTable table_from_bits(int num_edges, const std::vector<double>& bit_probs, Fn&& edge_fn) {
  JointTable t{num_edges, std::vector<double>(std::size_t{1} << num_edges, 0.0)};
  const int m = static_cast<int>(bit_probs.size());
  for (std::uint32_t bits = 0; bits < (1U << m); ++bits) {
    double w = 1.0;
    for (int i = 0; i < m; ++i) w *= ((bits >> i) & 1U) ? bit_probs[i] : 1.0 - bit_probs[i];
    t.probs[edge_fn(bits)] += w;
  }
  return t;
}

// Up-sets of {0,1}^m as bitmasks over the 2^m configurations, m <= 5.
const std::vector<std::uint64_t>& upsets(int m);

bool check_positive_association(const JointTable& table);
bool check_k_independence(const JointTable& table, const SmallGraph& graph, int k);
bool check_lemma1_condition_ii(const JointTable& table, const SmallGraph& graph, int k);

struct EdgeConstraint {
  int edge;
  bool open;
};

// P[event | given]; throws InvalidParameter if P[given] = 0.
double conditional_probability(const JointTable& table, const std::vector<EdgeConstraint>& event,
                               const std::vector<EdgeConstraint>& given);

// Edge {i,j} of the 4-cycle open iff X_i = X_j for i.i.d. fair bits X.
// Edges in order {1,2}, {2,3}, {3,4}, {4,1}.
JointTable example1_table();
SmallGraph four_cycle();

struct DominationBound {
  double rho = 0.0;
  double sigma = 0.0;
};

// rho(p) = (1 - (1-p)^(1/(2(delta-1)^k + 1)))^2, sigma(p) = 1 - rho(1-p).
DominationBound domination_bound(double p, int delta, int k);

// min(1, (n(n+1)/2 * p^2)^i).
double branching_bound_formula(int n, double p, int i);

}  // namespace assocperc
