#include "assocperc/latent_bits.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "assocperc/distribution.hpp"
#include "assocperc/error.hpp"

namespace assocperc {

LatentBits::LatentBits(std::uint64_t seed, double p) : seed_(seed), p_(p) {
  require_probability(p);
}

bool AssignedBits::bit(const LatentKey& key) const {
  for (std::size_t i = 0; i < keys_.size(); ++i) {
    if (keys_[i] == key) return (assignment_ >> i) & 1U;
  }
  if (!recording_) {
    throw std::logic_error("latent bit read that was not seen while recording");
  }
  keys_.push_back(key);
  return false;
}

void AssignedBits::set_keys(std::vector<LatentKey> keys) { keys_ = std::move(keys); }

double FiniteDistribution::prob(Mask state) const {
  const auto it = std::lower_bound(support.begin(), support.end(), state);
  if (it == support.end() || *it != state) return 0.0;
  return probs[static_cast<std::size_t>(it - support.begin())];
}

double FiniteDistribution::total() const {
  double sum = 0.0;
  for (double q : probs) sum += q;
  return sum;
}

void FiniteDistribution::validate(double tolerance) const {
  require(support.size() == probs.size(), "support and probability sizes differ");
  require(width >= 0 && width <= kMaxLevelWidth, "distribution width out of range");
  for (std::size_t i = 0; i < support.size(); ++i) {
    require((support[i] & ~low_bits(width)) == 0, "support entry exceeds width");
    require(i == 0 || support[i - 1] < support[i],
            "support must be sorted and distinct");
    require(probs[i] >= 0.0, "negative probability in distribution");
  }
  require(std::abs(total() - 1.0) <= tolerance,
          "distribution mass " + std::to_string(total()) + " is not 1");
}

FiniteDistribution make_distribution(int width,
                                     std::vector<std::pair<Mask, double>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  FiniteDistribution out;
  out.width = width;
  for (const auto& [mask, q] : entries) {
    if (!out.support.empty() && out.support.back() == mask) {
      out.probs.back() += q;
    } else {
      out.support.push_back(mask);
      out.probs.push_back(q);
    }
  }
  return out;
}

double total_variation(const FiniteDistribution& a, const FiniteDistribution& b) {
  std::map<Mask, double> diff;
  for (std::size_t i = 0; i < a.support.size(); ++i) diff[a.support[i]] += a.probs[i];
  for (std::size_t i = 0; i < b.support.size(); ++i) diff[b.support[i]] -= b.probs[i];
  double sum = 0.0;
  for (const auto& [mask, d] : diff) sum += std::abs(d);
  return 0.5 * sum;
}

FiniteDistribution empirical_distribution(int width, const std::vector<Mask>& samples) {
  std::map<Mask, double> counts;
  for (Mask m : samples) counts[m] += 1.0;
  const double n = static_cast<double>(samples.size());
  std::vector<std::pair<Mask, double>> entries;
  entries.reserve(counts.size());
  for (const auto& [mask, c] : counts) entries.emplace_back(mask, c / n);
  return make_distribution(width, std::move(entries));
}

}  // namespace assocperc
