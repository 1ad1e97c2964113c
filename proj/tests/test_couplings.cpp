#include <gtest/gtest.h>

#include <cmath>

#include "assocperc/couplings.hpp"
#include "assocperc/domination.hpp"
#include "assocperc/error.hpp"
#include "assocperc/oracle.hpp"
#include "test_support.hpp"

using namespace assocperc;

namespace {

const KernelKind kAllKernels[] = {KernelKind::kProduct, KernelKind::kPiPP,
                                  KernelKind::kSiblingBlock, KernelKind::kTruncatedSquare};

// Calls fn(z) for every assignment of the latent bits that fn reads.
template <class Fn>
void for_each_assignment(double p, Fn&& fn) {
  AssignedBits z(p);
  z.set_recording(true);
  fn(static_cast<const AssignedBits&>(z));
  z.set_recording(false);
  const int n = static_cast<int>(z.keys().size());
  ASSERT_LE(n, 22);
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << n); ++a) {
    z.set_assignment(a);
    fn(static_cast<const AssignedBits&>(z));
  }
}

}  // namespace

TEST(Kernel, NamesRoundTrip) {
  for (KernelKind k : kAllKernels) EXPECT_EQ(parse_kernel(kernel_name(k)), k);
  EXPECT_THROW(parse_kernel("square"), InvalidParameter);
}

TEST(Kernel, AllOpenAndAllClosed) {
  const BoxGeometry g(4, 0);
  for (KernelKind kind : kAllKernels) {
    const LevelKernel k{kind, 1.0};
    for (int level : {0, 1}) {
      const auto full = LevelSubset::full(g, level);
      EXPECT_EQ(kernel_step(k, full, g, ConstantBits(true, 1.0)).bits, g.level_mask(level + 1));
      const LevelKernel k0{kind, 0.0};
      EXPECT_EQ(kernel_step(k0, full, g, ConstantBits(false, 0.0)).bits, Mask{0});
    }
  }
}

TEST(Kernel, EdgeMarginals) {
  for (KernelKind kind : kAllKernels) {
    const LevelKernel k{kind, 0.6};
    for (int layer : {0, 1}) {
      for (bool right : {false, true}) {
        const auto law = enumerate_law(1, k.p, [&](const AssignedBits& z) {
          return Mask{edge_open(k, layer, 2, right, z) ? 1U : 0U};
        });
        EXPECT_NEAR(law.prob(1), k.marginal(), 1e-14) << kernel_name(kind);
      }
    }
  }
}

TEST(Kernel, TruncatedSquareEdgeFrequency) {
  const LevelKernel k{KernelKind::kTruncatedSquare, 0.73};
  int open = 0;
  const int n = 1000000;
  for (int t = 0; t < n; ++t) {
    open += edge_open(k, 3, 1, true, LatentBits(derive_seed(99, t), 0.73)) ? 1 : 0;
  }
  EXPECT_NEAR(static_cast<double>(open) / n, 0.5329, 0.002);
}

TEST(Kernel, RejectsMismatchedBits) {
  const BoxGeometry g(3, 0);
  const LevelKernel k{KernelKind::kPiPP, 0.5};
  EXPECT_THROW(kernel_step(k, LevelSubset::full(g, 0), g, LatentBits(1, 0.4)), InvalidParameter);
}

// Joint law of the four edges of one layer of w = 2 (three even columns above
// two odd ones) is positively associated and 1-independent for every kernel.
TEST(Kernel, LayerEdgesAreAssociatedAndOneIndependent) {
  const SmallGraph graph = SmallGraph::from_edges({{0, 10}, {1, 10}, {1, 11}, {2, 11}});
  for (KernelKind kind : kAllKernels) {
    const LevelKernel k{kind, 0.55};
    const auto law = enumerate_law(4, k.p, [&](const AssignedBits& z) {
      Mask m = 0;
      if (edge_open(k, 0, 0, true, z)) m |= 1U;
      if (edge_open(k, 0, 1, false, z)) m |= 2U;
      if (edge_open(k, 0, 1, true, z)) m |= 4U;
      if (edge_open(k, 0, 2, false, z)) m |= 8U;
      return m;
    });
    JointTable table{4, std::vector<double>(16, 0.0)};
    for (std::size_t i = 0; i < law.support.size(); ++i) table.probs[law.support[i]] = law.probs[i];
    EXPECT_TRUE(check_positive_association(table)) << kernel_name(kind);
    EXPECT_TRUE(check_k_independence(table, graph, 1)) << kernel_name(kind);
    EXPECT_EQ(check_k_independence(table, graph, 0), kind == KernelKind::kProduct)
        << kernel_name(kind);
  }
}

TEST(Coupling, XBelowKernelEverywhere) {
  const BoxGeometry g(3, 0);
  for (KernelKind kind : kAllKernels) {
    const LevelKernel k{kind, 0.6};
    for (int level : {0, 1}) {
      for (Mask bits = 1; bits <= g.level_mask(level); ++bits) {
        for_each_assignment(k.p, [&](const AssignedBits& z) {
          const auto [lower, upper] = coupled_x_vs_kernel_mask(k, bits, level, g, z);
          EXPECT_TRUE(support::subset_of(lower, upper));
        });
      }
    }
  }
}

TEST(Coupling, XVersusKernelHasExactMarginals) {
  const BoxGeometry g(3, 0);
  for (KernelKind kind : kAllKernels) {
    for (double p : {0.3, 0.8}) {
      const LevelKernel k{kind, p};
      for (int level : {0, 1}) {
        for (Mask bits = 1; bits <= g.level_mask(level); ++bits) {
          const LevelSubset w{g.level_width(level), bits, level};
          const int width = g.level_width(level + 1);
          const auto lower = enumerate_law(width, p, [&](const AssignedBits& z) {
            return coupled_x_vs_kernel_mask(k, bits, level, g, z).first;
          });
          const auto upper = enumerate_law(width, p, [&](const AssignedBits& z) {
            return coupled_x_vs_kernel_mask(k, bits, level, g, z).second;
          });
          EXPECT_LT(total_variation(lower, transition_prob(w, g, k.marginal()).entries), 1e-13)
              << kernel_name(kind) << " level " << level << " bits " << bits;
          EXPECT_LT(total_variation(upper, kernel_row(k, w, g)), 1e-13);
        }
      }
    }
  }
}

TEST(Coupling, EtaBelowXEverywhere) {
  const BoxGeometry g(4, 0);
  for (int level : {0, 1}) {
    for (Mask bits = 1; bits <= g.level_mask(level); ++bits) {
      for_each_assignment(0.5, [&](const AssignedBits& z) {
        const auto [eta, x] = coupled_eta_vs_x_mask(bits, level, g, z);
        EXPECT_TRUE(support::subset_of(eta, x));
      });
    }
  }
}

TEST(Coupling, EtaVersusXHasExactMarginals) {
  const BoxGeometry g(4, 0);
  for (double p : {0.25, 0.7}) {
    for (int level : {0, 1}) {
      for (Mask bits = 1; bits <= g.level_mask(level); ++bits) {
        const LevelSubset w{g.level_width(level), bits, level};
        const int width = g.level_width(level + 1);
        const auto eta = enumerate_law(width, p, [&](const AssignedBits& z) {
          return coupled_eta_vs_x_mask(bits, level, g, z).first;
        });
        const auto x = enumerate_law(width, p, [&](const AssignedBits& z) {
          return coupled_eta_vs_x_mask(bits, level, g, z).second;
        });
        EXPECT_LT(total_variation(eta, kernel_row({KernelKind::kPiPP, p}, w, g)), 1e-13);
        EXPECT_LT(total_variation(x, transition_prob(w, g, p).entries), 1e-13);
      }
    }
  }
}

TEST(Coupling, SampledPairsAreOrdered) {
  const BoxGeometry g(6, 2);
  for (std::uint64_t t = 0; t < 20000; ++t) {
    const LatentBits z(derive_seed(3, t), 0.7);
    const int level = static_cast<int>(t % 6);
    const Mask bits = (derive_seed(4, t) & g.level_mask(level)) | 1U;
    const LevelSubset w{g.level_width(level), bits, level};
    const auto ex = coupled_step_eta_vs_x(w, g, z);
    EXPECT_TRUE(support::subset_of(ex.lower.bits, ex.upper.bits));
    for (KernelKind kind : kAllKernels) {
      const auto xk = coupled_step_x_vs_kernel(w, {kind, 0.7}, g, z);
      EXPECT_TRUE(support::subset_of(xk.lower.bits, xk.upper.bits));
    }
  }
}

TEST(Domination, RowsFormAChain) {
  for (int w = 1; w <= 3; ++w) {
    const BoxGeometry g(w, 0);
    for (double p : {0.3, 0.5, 0.8}) {
      for (int level : {0, 1}) {
        for (Mask bits = 1; bits <= g.level_mask(level); ++bits) {
          const LevelSubset s{g.level_width(level), bits, level};
          const auto x_sq = transition_prob(s, g, p * p).entries;
          const auto eta = kernel_row({KernelKind::kPiPP, p}, s, g);
          const auto x = transition_prob(s, g, p).entries;
          EXPECT_TRUE(check_domination(x_sq, eta));
          EXPECT_TRUE(check_domination(eta, x));
          for (KernelKind kind : kAllKernels) {
            const LevelKernel k{kind, p};
            EXPECT_TRUE(check_domination(transition_prob(s, g, k.marginal()).entries,
                                         kernel_row(k, s, g)))
                << kernel_name(kind);
          }
        }
      }
    }
  }
}

TEST(TruncatedSquare, ConstantBits) {
  const Window win{0, 0, 4, 3};
  EXPECT_EQ(win.num_bonds(), 17);
  const auto all = truncated_square_bonds(win, ConstantBits(true, 1.0));
  for (auto b : all.open) EXPECT_EQ(b, 1);
  const auto none = truncated_square_bonds(win, ConstantBits(false, 0.0));
  for (auto b : none.open) EXPECT_EQ(b, 0);
}

TEST(TruncatedSquare, BondMarginalAndLocalDependence) {
  const Window win{0, 0, 3, 2};
  const double p = 0.73;
  const auto law = truncated_square_law(win, p);
  for (int b = 0; b < win.num_bonds(); ++b) {
    double open = 0.0;
    for (std::size_t i = 0; i < law.support.size(); ++i) {
      if ((law.support[i] >> b) & 1U) open += law.probs[i];
    }
    EXPECT_NEAR(open, p * p, 1e-13);
  }
}

TEST(TruncatedSquare, SamplerMatchesLaw) {
  const Window win{0, 0, 3, 2};
  const double p = 0.73;
  const auto law = truncated_square_law(win, p);
  const int n = 1000000;
  std::vector<Mask> samples;
  samples.reserve(n);
  for (int t = 0; t < n; ++t) samples.push_back(truncated_square_sample(win, p, derive_seed(8, t)).mask());
  // E[TV] is at most half the sum of the per-state standard deviations.
  double bound = 0.0;
  for (double q : law.probs) bound += 0.5 * std::sqrt(q * (1.0 - q) / n);
  EXPECT_LT(total_variation(law, empirical_distribution(win.num_bonds(), samples)), 2.0 * bound);
}
