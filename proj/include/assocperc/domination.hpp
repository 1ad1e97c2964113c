#pragma once

// Stochastic domination between laws of random subsets of one level, decided
// by a transport problem: a ⪯ b iff all mass of a can be routed to b along
// pairs x ⊆ y, i.e. iff the max flow from a to b equals 1.

#include <cstddef>
#include <tuple>
#include <vector>

#include "assocperc/distribution.hpp"

namespace assocperc {

inline constexpr std::size_t kMaxDominationSupport = 4096;
inline constexpr double kDominationTolerance = 1e-10;

struct DominationResult {
  bool dominated = false;
  double flow = 0.0;
  // Mass moved from a-state x to b-state y with x ⊆ y.
  std::vector<std::tuple<Mask, Mask, double>> coupling;
};

// Throws InvalidParameter on mismatched widths, masses off 1 by more than
// 1e-9, and GuardExceeded on supports above kMaxDominationSupport.
DominationResult domination_flow(const FiniteDistribution& a, const FiniteDistribution& b);

inline bool check_domination(const FiniteDistribution& a, const FiniteDistribution& b) {
  return domination_flow(a, b).dominated;
}

}  // namespace assocperc
