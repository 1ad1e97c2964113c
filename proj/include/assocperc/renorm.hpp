#pragma once

// Renormalization map h(p) = q_long(p) * q_square(p) with q_long the survival
// probability through the box of length w+1 and q_square through the box of
// length 0, both of width w.

#include <string>
#include <vector>

#include "assocperc/exact_dp.hpp"

namespace assocperc {

enum class Verdict { kEscapesToOne, kContracts, kInconclusive };

std::string verdict_name(Verdict v);

struct RenormStep {
  int n = 0;
  double p = 0.0;         // p_n
  double q_long = 0.0;    // survival through the long box at p_n
  double q_square = 0.0;  // survival through the square box at p_n
};

struct RenormTrajectory {
  int w = 0;
  double p0 = 0.0;
  // steps[n] holds p_n and, unless it is the final step, the two survival
  // probabilities that produce p_{n+1}.
  std::vector<RenormStep> steps;
  Verdict verdict = Verdict::kInconclusive;
};

inline constexpr int kDefaultRenormIters = 50;
inline constexpr double kDefaultEscapeEps = 1e-3;

double renorm_map(double p, int w, ExecPolicy policy = ExecPolicy::kParallel);

// Iterates until p_n > 1 - eps (escapes), p_n < p0 (contracts) or max_iters
// applications of the map (inconclusive).
RenormTrajectory iterate(double p0, int w, int max_iters = kDefaultRenormIters,
                         double eps = kDefaultEscapeEps,
                         ExecPolicy policy = ExecPolicy::kParallel);

}  // namespace assocperc
