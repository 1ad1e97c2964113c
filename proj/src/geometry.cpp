#include "assocperc/geometry.hpp"

#include <string>

#include "assocperc/error.hpp"

namespace assocperc {

BoxGeometry::BoxGeometry(int w, int ell) : w_(w), ell_(ell) {
  require(w >= 1, "box half-width w must be >= 1, got " + std::to_string(w));
  require(ell >= 0, "box length ell must be >= 0, got " + std::to_string(ell));
  require(w + 1 <= kMaxLevelWidth,
          "box half-width w must satisfy w + 1 <= 63, got " + std::to_string(w));
}

std::vector<int> box_levels(int w, int ell) {
  const BoxGeometry geom(w, ell);
  std::vector<int> widths(geom.num_levels());
  for (int i = 0; i < geom.num_levels(); ++i) widths[i] = geom.level_width(i);
  return widths;
}

std::vector<Interval> interval_decompose(Mask bits) {
  std::vector<Interval> out;
  while (bits != 0) {
    const int start = std::countr_zero(bits);
    const int length = std::countr_one(bits >> start);
    out.push_back({start, length});
    bits &= ~(low_bits(length) << start);
  }
  return out;
}

void validate_subset(const LevelSubset& subset, const BoxGeometry& geom) {
  require(subset.level >= 0 && subset.level < geom.num_levels(),
          "level index " + std::to_string(subset.level) + " outside the box");
  require(subset.width == geom.level_width(subset.level),
          "subset width " + std::to_string(subset.width) +
              " does not match level width " +
              std::to_string(geom.level_width(subset.level)));
  require((subset.bits & ~low_bits(subset.width)) == 0,
          "subset has bits beyond its width");
}

LevelSubset successors(const LevelSubset& subset, const BoxGeometry& geom) {
  validate_subset(subset, geom);
  require(subset.level < geom.top_level(),
          "the top level of the box has no successor level");
  const int next = subset.level + 1;
  return {geom.level_width(next), successor_mask(subset.bits, subset.level, geom),
          next};
}

}  // namespace assocperc
