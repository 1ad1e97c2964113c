#include "assocperc/markov_chain.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "assocperc/error.hpp"

namespace assocperc {

void validate_step(const LevelSubset& source, const BoxGeometry& geom, double p) {
  require_probability(p);
  validate_subset(source, geom);
  require(source.level < geom.top_level(),
          "the top level of the box has no successor level");
}

TransitionRow transition_prob(const LevelSubset& source, const BoxGeometry& geom,
                              double p) {
  validate_step(source, geom, p);
  if (source.width > kMaxRowWidth) {
    throw GuardExceeded("transition rows are enumerated only for widths <= " +
                        std::to_string(kMaxRowWidth) + ", got " +
                        std::to_string(source.width));
  }
  std::vector<double> p_pow(kMaxRowWidth + 2), q_pow(kMaxRowWidth + 2);
  for (int k = 0; k < kMaxRowWidth + 2; ++k) {
    p_pow[k] = std::pow(p, k);
    q_pow[k] = std::pow(1.0 - p, k);
  }

  std::vector<std::pair<Mask, double>> row{{0, 1.0}};
  for (const Interval& interval : interval_decompose(source.bits)) {
    const IntervalFan fan = interval_fan(interval.mask(), source.level, geom);
    const int fan_size = std::popcount(fan.successors);

    std::vector<std::pair<Mask, double>> local;
    Mask sub = fan.successors;
    while (true) {
      const int k = std::popcount(sub);
      double q = p_pow[k] * q_pow[fan_size - k];
      if (fan.full) {
        if (sub == 0) q = q_pow[interval.length];
        if (sub == fan.rightmost) q = 0.0;
      }
      local.emplace_back(sub, q);
      if (sub == 0) break;
      sub = (sub - 1) & fan.successors;
    }

    std::vector<std::pair<Mask, double>> product;
    product.reserve(row.size() * local.size());
    for (const auto& [mask, q] : row) {
      for (const auto& [sub_mask, sub_q] : local) {
        product.emplace_back(mask | sub_mask, q * sub_q);
      }
    }
    row = std::move(product);
  }

  const int next = source.level + 1;
  return {source, make_distribution(geom.level_width(next), std::move(row))};
}

}  // namespace assocperc
