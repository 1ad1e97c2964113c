#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "assocperc/couplings.hpp"
#include "assocperc/exact_dp.hpp"

namespace assocperc {

struct ConfidenceInterval {
  double low = 0.0;
  double high = 1.0;
};

// Exact binomial (Clopper-Pearson) interval for `successes` out of `trials`.
ConfidenceInterval clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                                   double confidence);

struct McEstimate {
  int w = 0;
  int ell = 0;
  double p = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t survivors = 0;
  double point_estimate = 0.0;
  double ci_low = 0.0;
  double ci_high = 1.0;
  double confidence = 0.99;
  std::uint64_t seed = 0;
};

// Trial t uses the latent bits of derive_seed(seed, t), so estimates at
// different p with one seed share their random numbers.
McEstimate mc_survival(int w, int ell, double p, std::uint64_t trials, std::uint64_t seed,
                       double confidence, ExecPolicy policy = ExecPolicy::kParallel);

std::uint64_t count_survivors_serial(const BoxGeometry& geom, double p, std::uint64_t trials,
                                     std::uint64_t seed);
std::uint64_t count_survivors_parallel(const BoxGeometry& geom, double p,
                                       std::uint64_t trials, std::uint64_t seed);

struct BranchingRow {
  int i = 0;
  std::uint64_t nonempty = 0;
  double frequency = 0.0;
  double bound = 0.0;
};

inline constexpr int kMaxBranchingDim = 6;
inline constexpr int kMaxBranchingLevel = 6;

// Oriented Z^n from the origin: a vertex u on an even level reaches every
// vertex w two levels up (w - u a sum of two unit vectors) iff Zout(u) and
// Zin(w) are both open. Rows i = 0..i_max report P[level 2i is reached].
std::vector<BranchingRow> branching_experiment(int n, double p, int i_max,
                                               std::uint64_t trials, std::uint64_t seed,
                                               ExecPolicy policy = ExecPolicy::kParallel);

struct TreeMomentReport {
  int d = 0;
  double p = 0.0;
  int depth = 0;
  std::uint64_t trials = 0;
  double mean_x = 0.0;
  double second_moment = 0.0;
  double mean_stderr = 0.0;
  KernelKind kernel = KernelKind::kProduct;
};

inline constexpr std::uint64_t kMaxTreeLeaves = 1000000;

// X_n = (number of depth-n vertices joined to the root) / (d p)^n on the
// d-ary tree. kernel must be product or sibling_block.
TreeMomentReport tree_moments(int d, double p, int depth, std::uint64_t trials,
                              std::uint64_t seed, KernelKind kernel,
                              ExecPolicy policy = ExecPolicy::kParallel);

// E[X_n^2] for the product kernel, summed exactly over pairs of leaves.
double tree_second_moment_exact(int d, double p, int depth);

struct Fig5Row {
  double p0 = 0.0;
  double q_long = 0.0;
  double q_square = 0.0;
  double p1 = 0.0;
};

struct Fig6Row {
  double p0 = 0.0;
  McEstimate q_long;
  McEstimate q_square;
  double p1_low = 0.0;   // product of the lower confidence bounds
  double p1_high = 0.0;  // product of the upper confidence bounds
};

inline constexpr int kFig5Width = 20;
inline constexpr int kFig6Width = 50;

std::vector<Fig5Row> reproduce_fig5(ExecPolicy policy = ExecPolicy::kParallel);
std::vector<Fig6Row> reproduce_fig6(std::uint64_t trials, std::uint64_t seed,
                                    ExecPolicy policy = ExecPolicy::kParallel);

}  // namespace assocperc
