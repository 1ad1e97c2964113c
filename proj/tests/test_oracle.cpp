#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "assocperc/error.hpp"
#include "assocperc/oracle.hpp"
#include "table_generator.hpp"

using namespace assocperc;

TEST(BruteForce, SmallestBox) {
  EXPECT_NEAR(brute_force_survival(1, 0, 0.5), 0.25, 1e-15);
  EXPECT_NEAR(brute_force_survival(2, 1, 1.0), 1.0, 1e-15);
  EXPECT_EQ(brute_force_survival(2, 1, 0.0), 0.0);
}

TEST(BruteForce, CountsGiveThePolynomial) {
  const auto counts = brute_force_survival_counts(2, 0);
  const int n = static_cast<int>(counts.size()) - 1;
  for (double p : {0.1, 0.45, 0.9}) {
    double s = 0.0;
    for (int k = 0; k <= n; ++k) s += counts[k] * std::pow(p, k) * std::pow(1.0 - p, n - k);
    EXPECT_NEAR(s, brute_force_survival(2, 0, p), 1e-14);
  }
}

TEST(BruteForce, Guard) {
  EXPECT_THROW(brute_force_survival(4, 2, 0.5), GuardExceeded);
  EXPECT_THROW(brute_force_survival(1, 0, 1.5), InvalidParameter);
}

TEST(Upsets, DedekindNumbers) {
  const std::uint64_t expect[] = {2, 3, 6, 20, 168, 7581};
  for (int m = 0; m <= 5; ++m) EXPECT_EQ(upsets(m).size(), expect[m]) << m;
  EXPECT_THROW(upsets(6), InvalidParameter);
}

TEST(SmallGraph, CycleDistances) {
  const auto g = four_cycle();
  EXPECT_EQ(g.edge_distance[0][1], 0);
  EXPECT_EQ(g.edge_distance[0][2], 1);
  EXPECT_EQ(g.distance(0b0001, 0b0100), 1);
  EXPECT_EQ(g.closure(0b0001, 0), 0b0001U);
  EXPECT_EQ(g.closure(0b0001, 1), 0b1011U);
  EXPECT_EQ(g.closure(0b0001, 2), 0b1111U);
  EXPECT_EQ(g.closure(0, 3), 0U);
  const auto apart = SmallGraph::from_edges({{0, 1}, {2, 3}});
  EXPECT_EQ(apart.edge_distance[0][1], SmallGraph::kUnreachable);
}

TEST(Association, ReferenceLaws) {
  EXPECT_TRUE(check_positive_association(product_table(4, 0.3)));
  EXPECT_FALSE(check_positive_association(example1_table()));
  const auto correlated = table_from_bits(4, {0.4}, [](std::uint32_t b) { return b ? 0xFU : 0U; });
  EXPECT_TRUE(check_positive_association(correlated));
  const auto cycle = four_cycle();
  EXPECT_TRUE(check_k_independence(example1_table(), cycle, 1));
  EXPECT_TRUE(check_k_independence(product_table(4, 0.7), cycle, 0));
  EXPECT_FALSE(check_k_independence(correlated, cycle, 1));
  EXPECT_TRUE(check_k_independence(correlated, cycle, 2));
}

TEST(ConditionII, ReferenceLaws) {
  const auto cycle = four_cycle();
  EXPECT_FALSE(check_lemma1_condition_ii(example1_table(), cycle, 1));
  for (int k : {0, 1, 2}) EXPECT_TRUE(check_lemma1_condition_ii(product_table(4, 0.35), cycle, k));
}

TEST(ConditionII, CycleParityWitness) {
  const auto t = example1_table();
  // Edges 0..3 are {1,2}, {2,3}, {3,4}, {4,1}.
  EXPECT_EQ(conditional_probability(t, {{0, true}}, {}), 0.5);
  EXPECT_EQ(conditional_probability(t, {{0, true}}, {{3, true}, {1, true}}), 0.5);
  EXPECT_EQ(conditional_probability(t, {{0, true}}, {{3, true}, {1, true}, {2, false}}), 0.0);
  EXPECT_THROW(conditional_probability(t, {{0, true}},
                                       {{0, true}, {1, true}, {2, true}, {3, false}}),
               InvalidParameter);
}

TEST(ConditionII, EquivalentToAssociationAndIndependence) {
  tablegen::Generator gen(31);
  std::map<std::pair<bool, bool>, int> seen;
  for (int i = 0; i < 60; ++i) {
    const auto c = gen.next();
    for (int k : {0, 1}) {
      const bool pa = check_positive_association(c.table);
      const bool ind = check_k_independence(c.table, c.graph, k);
      ++seen[{pa, ind}];
      EXPECT_EQ(check_lemma1_condition_ii(c.table, c.graph, k), pa && ind)
          << c.kind << " case " << i << " k=" << k;
    }
  }
  // The generated mix exercises both sides of the equivalence.
  EXPECT_GT((seen[{true, true}]), 0);
  EXPECT_GT((seen[{false, true}]), 0);
  EXPECT_GT((seen[{true, false}]), 0);
}

TEST(Tables, Validation) {
  JointTable bad{2, {0.5, 0.5, 0.5, 0.5}};
  EXPECT_THROW(bad.validate(), InvalidParameter);
  JointTable neg{1, {1.5, -0.5}};
  EXPECT_THROW(neg.validate(), InvalidParameter);
  EXPECT_THROW(product_table(6, 0.5).validate(), GuardExceeded);
  EXPECT_THROW(check_k_independence(product_table(3, 0.5), four_cycle(), 1), InvalidParameter);
}

TEST(DominationBound, Examples) {
  const auto b0 = domination_bound(0.0, 2, 1);
  EXPECT_EQ(b0.rho, 0.0);
  EXPECT_NEAR(b0.sigma, 0.0, 1e-15);
  const auto b1 = domination_bound(1.0, 2, 1);
  EXPECT_EQ(b1.rho, 1.0);
  EXPECT_EQ(b1.sigma, 1.0);
  EXPECT_NEAR(domination_bound(0.488, 2, 1).rho, 0.04, 1e-12);
  EXPECT_THROW(domination_bound(0.5, 1, 1), InvalidParameter);
  EXPECT_THROW(domination_bound(0.5, 2, 0), InvalidParameter);
}

TEST(DominationBound, MonotoneAndOrdered) {
  for (auto [delta, k] : {std::pair{2, 1}, std::pair{4, 1}, std::pair{4, 2}}) {
    double prev_rho = -1.0, prev_sigma = -1.0;
    for (int i = 0; i <= 100; ++i) {
      const double p = i / 100.0;
      const auto b = domination_bound(p, delta, k);
      EXPECT_GT(b.rho, prev_rho);
      EXPECT_GT(b.sigma, prev_sigma);
      EXPECT_LE(b.rho, p + 1e-15);
      EXPECT_GE(b.sigma, p - 1e-15);
      prev_rho = b.rho;
      prev_sigma = b.sigma;
    }
  }
}

TEST(BranchingBound, Examples) {
  EXPECT_EQ(branching_bound_formula(3, 0.4, 0), 1.0);
  EXPECT_NEAR(branching_bound_formula(3, std::sqrt(2.0) / 4.0, 2), 0.5625, 1e-15);
  EXPECT_EQ(branching_bound_formula(2, 0.0, 3), 0.0);
  EXPECT_EQ(branching_bound_formula(4, 0.9, 2), 1.0);
}
