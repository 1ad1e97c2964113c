#pragma once

#include <bit>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "assocperc/error.hpp"
#include "assocperc/geometry.hpp"
#include "assocperc/latent_bits.hpp"

namespace assocperc {

// Law of a random subset of one level, support sorted by mask.
struct FiniteDistribution {
  int width = 0;
  std::vector<Mask> support;
  std::vector<double> probs;

  double prob(Mask state) const;
  double total() const;
  // Throws InvalidParameter unless entries are distinct, in range,
  // nonnegative and sum to 1 within `tolerance`.
  void validate(double tolerance = 1e-12) const;
};

// Sorts and merges duplicate masks.
FiniteDistribution make_distribution(int width,
                                     std::vector<std::pair<Mask, double>> entries);

double total_variation(const FiniteDistribution& a, const FiniteDistribution& b);

// Empirical law of a sample of masks.
FiniteDistribution empirical_distribution(int width, const std::vector<Mask>& samples);

inline constexpr int kMaxEnumeratedBits = 24;

// Exact law of fn(bits) when the bits fn reads are i.i.d. Bernoulli(p).
// fn must read the same keys whatever their values; a value-dependent read
// surfaces as std::logic_error from AssignedBits.
template <class Fn>
FiniteDistribution enumerate_law(int width, double p, Fn&& fn) {
  AssignedBits source(p);
  source.set_recording(true);
  (void)fn(static_cast<const AssignedBits&>(source));
  source.set_recording(false);
  const int n = static_cast<int>(source.keys().size());
  if (n > kMaxEnumeratedBits) {
    throw GuardExceeded("law enumeration over " + std::to_string(n) +
                        " latent bits exceeds the guard of " +
                        std::to_string(kMaxEnumeratedBits));
  }
  std::vector<double> weight_by_ones(n + 1);
  for (int k = 0; k <= n; ++k) {
    weight_by_ones[k] = std::pow(p, k) * std::pow(1.0 - p, n - k);
  }
  std::map<Mask, double> law;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t assignment = 0; assignment < count; ++assignment) {
    source.set_assignment(assignment);
    const Mask out = fn(static_cast<const AssignedBits&>(source));
    law[out] += weight_by_ones[std::popcount(assignment)];
  }
  std::vector<std::pair<Mask, double>> entries(law.begin(), law.end());
  return make_distribution(width, std::move(entries));
}

}  // namespace assocperc
