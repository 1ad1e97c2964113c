#include <gtest/gtest.h>

#include "assocperc/error.hpp"
#include "assocperc/geometry.hpp"
#include "lattice_oracle.hpp"

using namespace assocperc;

TEST(Geometry, LevelWidthsMatchLattice) {
  for (int w = 1; w <= 6; ++w) {
    for (int ell = 0; ell <= 4; ++ell) {
      EXPECT_EQ(box_levels(w, ell), lattice::level_widths(w, ell)) << w << " " << ell;
      const BoxGeometry g(w, ell);
      EXPECT_EQ(g.num_levels(), static_cast<int>(box_levels(w, ell).size()));
    }
  }
}

TEST(Geometry, SuccessorsMatchLattice) {
  for (int w = 1; w <= 5; ++w) {
    for (int ell = 0; ell <= 2; ++ell) {
      const BoxGeometry g(w, ell);
      const auto lat = lattice::make_lattice(w, ell);
      for (int level = 0; level < g.top_level(); ++level) {
        for (Mask bits = 0; bits <= g.level_mask(level); ++bits) {
          EXPECT_EQ(successor_mask(bits, level, g), lattice::successors(lat, level, bits));
        }
      }
    }
  }
}

TEST(Geometry, IntervalDecomposition) {
  const auto iv = interval_decompose(Mask{0b1101110});
  ASSERT_EQ(iv.size(), 2U);
  EXPECT_EQ(iv[0], (Interval{1, 3}));
  EXPECT_EQ(iv[1], (Interval{5, 2}));
  EXPECT_EQ(iv[1].last(), 6);
  EXPECT_TRUE(interval_decompose(Mask{0}).empty());
}

TEST(Geometry, SuccessorsOfSubset) {
  const BoxGeometry g(3, 0);
  const auto s = successors(LevelSubset::full(g, 0), g);
  EXPECT_EQ(s.level, 1);
  EXPECT_EQ(s.bits, g.level_mask(1));
  EXPECT_EQ(successors({4, 0b0001, 0}, g).bits, Mask{0b1});
  EXPECT_EQ(successors({3, 0b100, 1}, g).bits, Mask{0b1100});
}

TEST(Geometry, Validation) {
  EXPECT_THROW(BoxGeometry(0, 1), InvalidParameter);
  EXPECT_THROW(BoxGeometry(2, -1), InvalidParameter);
  const BoxGeometry g(2, 0);
  EXPECT_THROW(validate_subset({3, 0b1000, 0}, g), InvalidParameter);
  EXPECT_THROW(validate_subset({2, 0b1, 0}, g), InvalidParameter);
  EXPECT_THROW(validate_subset({3, 0b1, 9}, g), InvalidParameter);
  EXPECT_NO_THROW(validate_subset({2, 0b11, 1}, g));
}
