#pragma once

// The lower-bound Markov chain on level subsets of a diagonal box.
//
// For a maximal interval of length l whose in-box out-neighbourhood N has
// exactly l + 1 columns ("full fan"), the next level is
//   empty                      with probability (1-p)^l,
//   {rightmost column of N}    with probability 0,
//   any other W' subset of N   with probability p^|W'| (1-p)^(|N|-|W'|).
// Intervals whose fan is cut by the box boundary use the plain product law on
// N. Distinct intervals have disjoint fans and move independently.
//
// Sampling realises this as an increasing function of one Bernoulli(p) bit
// Z(v) per next-level column: a full-fan interval dies iff Z vanishes on N
// minus its rightmost column, otherwise it moves to {v in N : Z(v) = 1}.

#include <bit>
#include <vector>

#include "assocperc/distribution.hpp"
#include "assocperc/geometry.hpp"
#include "assocperc/latent_bits.hpp"

namespace assocperc {

struct TransitionRow {
  LevelSubset source;
  // Law of the next level. Every subset of successors(source) is listed,
  // including the zero-probability "rightmost alone" states.
  FiniteDistribution entries;

  double prob(Mask next) const { return entries.prob(next); }
};

inline constexpr int kMaxRowWidth = 20;

// In-box fan of one interval on `level`.
struct IntervalFan {
  Mask successors = 0;
  bool full = false;  // |successors| == length + 1
  Mask rightmost = 0;  // highest successor column; meaningful when full
};

inline IntervalFan interval_fan(Mask interval_bits, int level, const BoxGeometry& geom) {
  IntervalFan fan;
  fan.successors = successor_mask(interval_bits, level, geom);
  fan.full = std::popcount(fan.successors) == std::popcount(interval_bits) + 1;
  if (fan.successors != 0) {
    fan.rightmost = Mask{1} << (63 - std::countl_zero(fan.successors));
  }
  return fan;
}

// Exact row p_X(W, .). Throws InvalidParameter for p outside [0, 1], a subset
// that does not fit the geometry or sits on the top level, and GuardExceeded
// for level widths above kMaxRowWidth.
TransitionRow transition_prob(const LevelSubset& source, const BoxGeometry& geom, double p);

// One step of the monotone construction on raw masks. Reads Z(v) for every
// v in the in-box fan of `bits`, regardless of their values.
template <class Bits>
Mask sample_next_mask(Mask bits, int level, const BoxGeometry& geom, const Bits& z) {
  const Mask fan_all = successor_mask(bits, level, geom);
  Mask open = 0;
  for (Mask rest = fan_all; rest != 0; rest &= rest - 1) {
    const int column = std::countr_zero(rest);
    if (z.bit({level + 1, column, Channel::kSite})) open |= Mask{1} << column;
  }
  Mask next = open;
  for (Mask rest = bits; rest != 0;) {
    const int start = std::countr_zero(rest);
    const int length = std::countr_one(rest >> start);
    const Mask interval = low_bits(length) << start;
    rest &= ~interval;
    const IntervalFan fan = interval_fan(interval, level, geom);
    if (fan.full && (open & fan.successors & ~fan.rightmost) == 0) {
      next &= ~fan.successors;
    }
  }
  return next;
}

void validate_step(const LevelSubset& source, const BoxGeometry& geom, double p);

template <class Bits>
LevelSubset sample_next(const LevelSubset& source, const BoxGeometry& geom, const Bits& z) {
  validate_step(source, geom, z.p());
  const int next = source.level + 1;
  return {geom.level_width(next), sample_next_mask(source.bits, source.level, geom, z),
          next};
}

// Trajectory X_0, ..., X_top from `initial` on level 0.
template <class Bits>
std::vector<LevelSubset> run_chain(const LevelSubset& initial, const BoxGeometry& geom,
                                   const Bits& z) {
  validate_subset(initial, geom);
  require(initial.level == 0, "the chain starts on level 0");
  require_probability(z.p());
  std::vector<LevelSubset> path;
  path.reserve(geom.num_levels());
  path.push_back(initial);
  for (int level = 0; level < geom.top_level(); ++level) {
    const Mask bits = path.back().bits;
    const Mask next = bits == 0 ? 0 : sample_next_mask(bits, level, geom, z);
    path.push_back({geom.level_width(level + 1), next, level + 1});
  }
  return path;
}

// Whether the chain started from the full bottom level reaches the top level.
template <class Bits>
bool chain_survives(const BoxGeometry& geom, const Bits& z) {
  Mask bits = geom.level_mask(0);
  for (int level = 0; level < geom.top_level() && bits != 0; ++level) {
    bits = sample_next_mask(bits, level, geom, z);
  }
  return bits != 0;
}

}  // namespace assocperc
