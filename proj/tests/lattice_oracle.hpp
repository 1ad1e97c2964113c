#pragma once

// Test-side model of the box as a set of points of Z^2, independent of the
// bitmask geometry of the library: the union of the radius-w diamonds
// centred at (k, k), k = 0..ell, with levels x + y = const and edges
// (x, y) -> (x+1, y), (x, y+1). Columns of a level are ordered by x.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace lattice {

using Point = std::pair<int, int>;

struct Lattice {
  int w = 0;
  int ell = 0;
  std::vector<std::vector<Point>> levels;
  std::set<Point> points;

  bool contains(int x, int y) const { return points.count({x, y}) > 0; }

  int column(int level, const Point& pt) const {
    const auto& lv = levels[level];
    const auto it = std::find(lv.begin(), lv.end(), pt);
    return it == lv.end() ? -1 : static_cast<int>(it - lv.begin());
  }
};

inline Lattice make_lattice(int w, int ell) {
  Lattice lat;
  lat.w = w;
  lat.ell = ell;
  std::map<int, std::vector<Point>> by_sum;
  for (int x = -w - 1; x <= ell + w + 1; ++x) {
    for (int y = -w - 1; y <= ell + w + 1; ++y) {
      for (int k = 0; k <= ell; ++k) {
        if (std::abs(x - k) + std::abs(y - k) <= w) {
          by_sum[x + y].push_back({x, y});
          lat.points.insert({x, y});
          break;
        }
      }
    }
  }
  for (auto& [s, pts] : by_sum) {
    std::sort(pts.begin(), pts.end());
    lat.levels.push_back(pts);
  }
  return lat;
}

inline std::vector<int> level_widths(int w, int ell) {
  std::vector<int> out;
  for (const auto& lv : make_lattice(w, ell).levels) out.push_back(static_cast<int>(lv.size()));
  return out;
}

// Columns of level+1 adjacent to the columns `bits` of `level`.
inline std::uint64_t successors(const Lattice& lat, int level, std::uint64_t bits) {
  std::uint64_t out = 0;
  const auto& lv = lat.levels[level];
  for (std::size_t c = 0; c < lv.size(); ++c) {
    if (!((bits >> c) & 1U)) continue;
    const auto [x, y] = lv[c];
    for (const Point& q : {Point{x + 1, y}, Point{x, y + 1}}) {
      const int col = lat.column(level + 1, q);
      if (col >= 0) out |= std::uint64_t{1} << col;
    }
  }
  return out;
}

// Exact next-level law of the chain from `bits`, by enumerating one site bit
// per column of the next level and applying the interval rule literally.
inline std::map<std::uint64_t, double> chain_row(const Lattice& lat, int level,
                                                 std::uint64_t bits, double p) {
  const auto& lv = lat.levels[level];
  // Runs of consecutive x.
  std::vector<std::vector<int>> runs;
  for (std::size_t c = 0; c < lv.size(); ++c) {
    if (!((bits >> c) & 1U)) continue;
    if (!runs.empty() && runs.back().back() == static_cast<int>(c) - 1 &&
        lv[c].first == lv[c - 1].first + 1) {
      runs.back().push_back(static_cast<int>(c));
    } else {
      runs.push_back({static_cast<int>(c)});
    }
  }
  const int next_width = static_cast<int>(lat.levels[level + 1].size());
  std::map<std::uint64_t, double> row;
  for (std::uint64_t z = 0; z < (std::uint64_t{1} << next_width); ++z) {
    double weight = 1.0;
    for (int c = 0; c < next_width; ++c) weight *= ((z >> c) & 1U) ? p : 1.0 - p;
    std::uint64_t out = 0;
    for (const auto& run : runs) {
      std::uint64_t run_bits = 0;
      for (int c : run) run_bits |= std::uint64_t{1} << c;
      const std::uint64_t fan = successors(lat, level, run_bits);
      const int fan_size = static_cast<int>(std::popcount(fan));
      std::uint64_t special = 0;
      for (int c = next_width - 1; c >= 0; --c) {
        if ((fan >> c) & 1U) {
          special = std::uint64_t{1} << c;
          break;
        }
      }
      const bool full = fan_size == static_cast<int>(run.size()) + 1;
      if (full && (z & fan & ~special) == 0) continue;
      out |= z & fan;
    }
    row[out] += weight;
  }
  return row;
}

}  // namespace lattice
