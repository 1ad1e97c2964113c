#pragma once

// Diagonal-box geometry and level subsets.
//
// A diagonal box is the union of ell+1 radius-w diamonds of Z^2 strung along
// the (1,1) direction, oriented so that every edge goes from level i to level
// i+1. After rotating by 45 degrees, level i is a row of columns
// 0..width(i)-1 with column index increasing with the x coordinate:
//
//   even level (w+1 columns) -> odd level (w columns):
//       even column j reaches odd columns j-1 and j
//   odd level (w columns) -> even level (w+1 columns):
//       odd column j reaches even columns j and j+1
//
// Successors outside the box are dropped.

#include <bit>
#include <cstdint>
#include <vector>

namespace assocperc {

using Mask = std::uint64_t;

inline constexpr int kMaxLevelWidth = 63;

constexpr Mask low_bits(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

class BoxGeometry {
 public:
  // Throws InvalidParameter for w < 1, ell < 0, or w + 1 > kMaxLevelWidth.
  BoxGeometry(int w, int ell);

  int w() const { return w_; }
  int ell() const { return ell_; }
  int num_levels() const { return 2 * (ell_ + w_) + 1; }
  int top_level() const { return num_levels() - 1; }
  int level_width(int level) const { return level % 2 == 0 ? w_ + 1 : w_; }
  Mask level_mask(int level) const { return low_bits(level_width(level)); }

  friend bool operator==(const BoxGeometry&, const BoxGeometry&) = default;

 private:
  int w_;
  int ell_;
};

// Occupied columns of one level. Bit j set <=> column j occupied.
struct LevelSubset {
  int width = 0;
  Mask bits = 0;
  int level = 0;

  static LevelSubset full(const BoxGeometry& geom, int level) {
    return {geom.level_width(level), geom.level_mask(level), level};
  }

  bool empty() const { return bits == 0; }
  int size() const { return std::popcount(bits); }
  bool contains(int column) const { return (bits >> column) & 1U; }

  friend bool operator==(const LevelSubset&, const LevelSubset&) = default;
};

// A maximal run of consecutive occupied columns.
struct Interval {
  int start = 0;
  int length = 0;

  int last() const { return start + length - 1; }
  Mask mask() const { return low_bits(length) << start; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

std::vector<int> box_levels(int w, int ell);

// Maximal intervals of `bits`, left to right.
std::vector<Interval> interval_decompose(Mask bits);
inline std::vector<Interval> interval_decompose(const LevelSubset& subset) {
  return interval_decompose(subset.bits);
}

// In-box out-neighbourhood of `bits` on level `level`, as a mask over the
// columns of level + 1. Pure bit arithmetic; no range checks.
inline Mask successor_mask(Mask bits, int level, const BoxGeometry& geom) {
  if (level % 2 == 0) return (bits | (bits >> 1)) & low_bits(geom.w());
  return (bits | (bits << 1)) & low_bits(geom.w() + 1);
}

// Throws InvalidParameter when `subset` sits on the top level or its width
// does not match the geometry.
LevelSubset successors(const LevelSubset& subset, const BoxGeometry& geom);

// Checks that `subset` is a well-formed subset of level subset.level of geom.
void validate_subset(const LevelSubset& subset, const BoxGeometry& geom);

}  // namespace assocperc
