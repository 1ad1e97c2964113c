#include "assocperc/experiments.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/beta.hpp>

#include "assocperc/error.hpp"
#include "assocperc/markov_chain.hpp"
#include "assocperc/oracle.hpp"

namespace assocperc {

ConfidenceInterval clopper_pearson(std::uint64_t successes, std::uint64_t trials,
                                   double confidence) {
  require(trials >= 1, "trials must be at least 1");
  require(successes <= trials, "more successes than trials");
  require(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0, 1)");
  const double alpha = 1.0 - confidence;
  const auto s = static_cast<double>(successes);
  const auto n = static_cast<double>(trials);
  ConfidenceInterval ci;
  if (successes > 0) {
    ci.low = boost::math::quantile(boost::math::beta_distribution<double>(s, n - s + 1.0),
                                   alpha / 2.0);
  }
  if (successes < trials) {
    ci.high = boost::math::quantile(boost::math::beta_distribution<double>(s + 1.0, n - s),
                                    1.0 - alpha / 2.0);
  }
  return ci;
}

std::uint64_t count_survivors_serial(const BoxGeometry& geom, double p, std::uint64_t trials,
                                     std::uint64_t seed) {
  std::uint64_t count = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    if (chain_survives(geom, LatentBits(derive_seed(seed, t), p))) ++count;
  }
  return count;
}

std::uint64_t count_survivors_parallel(const BoxGeometry& geom, double p,
                                       std::uint64_t trials, std::uint64_t seed) {
  std::uint64_t count = 0;
  const auto n = static_cast<std::int64_t>(trials);
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : count)
  for (std::int64_t t = 0; t < n; ++t) {
    if (chain_survives(geom, LatentBits(derive_seed(seed, static_cast<std::uint64_t>(t)), p))) {
      ++count;
    }
  }
  return count;
}

McEstimate mc_survival(int w, int ell, double p, std::uint64_t trials, std::uint64_t seed,
                       double confidence, ExecPolicy policy) {
  require_probability(p);
  require(trials >= 1, "trials must be at least 1");
  require(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0, 1)");
  const BoxGeometry geom(w, ell);
  McEstimate est;
  est.w = w;
  est.ell = ell;
  est.p = p;
  est.trials = trials;
  est.confidence = confidence;
  est.seed = seed;
  est.survivors = policy == ExecPolicy::kSerial ? count_survivors_serial(geom, p, trials, seed)
                                                : count_survivors_parallel(geom, p, trials, seed);
  est.point_estimate = static_cast<double>(est.survivors) / static_cast<double>(trials);
  const ConfidenceInterval ci = clopper_pearson(est.survivors, trials, confidence);
  est.ci_low = ci.low;
  est.ci_high = ci.high;
  return est;
}

namespace {

using Point = std::uint64_t;  // 8 bits per coordinate

Point add_unit(Point u, int axis) { return u + (Point{1} << (8 * axis)); }

// Highest level 2i reached from the origin in one trial, capped at i_max.
int branching_reach(int n, int i_max, const LatentBits& z) {
  std::vector<Point> cur{0}, next;
  for (int i = 1; i <= i_max; ++i) {
    next.clear();
    for (Point u : cur) {
      if (!z.bit({static_cast<std::int64_t>(u), 0, Channel::kZOut})) continue;
      for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
          const Point w = add_unit(add_unit(u, a), b);
          if (z.bit({static_cast<std::int64_t>(w), 0, Channel::kZIn})) next.push_back(w);
        }
      }
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    if (next.empty()) return i - 1;
    cur.swap(next);
  }
  return i_max;
}

}  // namespace

std::vector<BranchingRow> branching_experiment(int n, double p, int i_max,
                                               std::uint64_t trials, std::uint64_t seed,
                                               ExecPolicy policy) {
  require(n >= 1, "dimension must be at least 1");
  require(i_max >= 0, "i_max must be nonnegative");
  require_probability(p);
  require(trials >= 1, "trials must be at least 1");
  if (n > kMaxBranchingDim || i_max > kMaxBranchingLevel) {
    throw GuardExceeded("branching experiment is limited to n <= 6 and i_max <= 6");
  }
  std::vector<std::uint64_t> reach_hist(i_max + 1, 0);
  const auto total = static_cast<std::int64_t>(trials);
  if (policy == ExecPolicy::kSerial) {
    for (std::int64_t t = 0; t < total; ++t) {
      ++reach_hist[branching_reach(n, i_max, LatentBits(derive_seed(seed, t), p))];
    }
  } else {
    std::uint64_t* hist = reach_hist.data();
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : hist[:i_max + 1])
    for (std::int64_t t = 0; t < total; ++t) {
      ++hist[branching_reach(n, i_max, LatentBits(derive_seed(seed, t), p))];
    }
  }
  std::vector<BranchingRow> rows;
  std::uint64_t at_least = trials;
  for (int i = 0; i <= i_max; ++i) {
    if (i > 0) at_least -= reach_hist[i - 1];
    rows.push_back({i, at_least, static_cast<double>(at_least) / static_cast<double>(trials),
                    branching_bound_formula(n, p, i)});
  }
  return rows;
}

namespace {

// Number of depth-`depth` vertices joined to the root in one trial.
std::uint64_t tree_leaves_reached(int d, int depth, KernelKind kernel, const LatentBits& z) {
  std::vector<std::int64_t> cur{0}, next;
  for (int k = 0; k < depth && !cur.empty(); ++k) {
    next.clear();
    const bool shared = kernel == KernelKind::kSiblingBlock && k % 2 == 0;
    for (std::int64_t v : cur) {
      if (shared && !z.bit({k, v, Channel::kZOut})) continue;
      for (int j = 0; j < d; ++j) {
        const std::int64_t c = v * d + j;
        if (shared) {
          next.push_back(c);
        } else {
          const Channel ch = kernel == KernelKind::kProduct ? Channel::kTreeEdge : Channel::kZIn;
          if (z.bit({k, c, ch})) next.push_back(c);
        }
      }
    }
    cur.swap(next);
  }
  return cur.size();
}

}  // namespace

TreeMomentReport tree_moments(int d, double p, int depth, std::uint64_t trials,
                              std::uint64_t seed, KernelKind kernel, ExecPolicy policy) {
  require(d >= 2, "arity must be at least 2");
  require(p > 0.0 && p <= 1.0, "p must lie in (0, 1]");
  require(depth >= 0, "depth must be nonnegative");
  require(trials >= 1, "trials must be at least 1");
  require(kernel == KernelKind::kProduct || kernel == KernelKind::kSiblingBlock,
          "tree moments support the product and sibling_block kernels");
  if (std::pow(static_cast<double>(d), depth) > static_cast<double>(kMaxTreeLeaves)) {
    throw GuardExceeded("d^depth exceeds the leaf guard of 10^6");
  }
  // Integer sums keep the result independent of scheduling.
  std::uint64_t sum = 0, sum_sq = 0;
  const auto total = static_cast<std::int64_t>(trials);
  if (policy == ExecPolicy::kSerial) {
    for (std::int64_t t = 0; t < total; ++t) {
      const std::uint64_t c = tree_leaves_reached(d, depth, kernel, LatentBits(derive_seed(seed, t), p));
      sum += c;
      sum_sq += c * c;
    }
  } else {
#pragma omp parallel for schedule(dynamic, 256) reduction(+ : sum, sum_sq)
    for (std::int64_t t = 0; t < total; ++t) {
      const std::uint64_t c = tree_leaves_reached(d, depth, kernel, LatentBits(derive_seed(seed, t), p));
      sum += c;
      sum_sq += c * c;
    }
  }
  const double scale = std::pow(d * p, -depth);
  const auto n = static_cast<double>(trials);
  TreeMomentReport r;
  r.d = d;
  r.p = p;
  r.depth = depth;
  r.trials = trials;
  r.kernel = kernel;
  r.mean_x = static_cast<double>(sum) / n * scale;
  r.second_moment = static_cast<double>(sum_sq) / n * scale * scale;
  const double var = std::max(0.0, r.second_moment - r.mean_x * r.mean_x);
  r.mean_stderr = std::sqrt(var / n);
  return r;
}

double tree_second_moment_exact(int d, double p, int depth) {
  require(d >= 2, "arity must be at least 2");
  require(p > 0.0 && p <= 1.0, "p must lie in (0, 1]");
  require(depth >= 0, "depth must be nonnegative");
  double s = 0.0;
  for (int k = 0; k < depth; ++k) s += (1.0 - 1.0 / d) * std::pow(d * p, -k);
  return s + std::pow(d * p, -depth);
}

std::vector<Fig5Row> reproduce_fig5(ExecPolicy policy) {
  std::vector<Fig5Row> rows;
  for (double p0 : {0.767, 0.77}) {
    Fig5Row r;
    r.p0 = p0;
    r.q_long = exact_survival(kFig5Width, kFig5Width + 1, p0, policy);
    r.q_square = exact_survival(kFig5Width, 0, p0, policy);
    r.p1 = r.q_long * r.q_square;
    rows.push_back(r);
  }
  return rows;
}

std::vector<Fig6Row> reproduce_fig6(std::uint64_t trials, std::uint64_t seed,
                                    ExecPolicy policy) {
  std::vector<Fig6Row> rows;
  for (double p0 : {0.76, 0.77}) {
    Fig6Row r;
    r.p0 = p0;
    r.q_long = mc_survival(kFig6Width, kFig6Width + 1, p0, trials, seed, 0.99, policy);
    r.q_square = mc_survival(kFig6Width, 0, p0, trials, seed, 0.99, policy);
    r.p1_low = r.q_long.ci_low * r.q_square.ci_low;
    r.p1_high = r.q_long.ci_high * r.q_square.ci_high;
    rows.push_back(r);
  }
  return rows;
}

}  // namespace assocperc
