#include "assocperc/exact_dp.hpp"

#include <string>
#include <utility>

#include "assocperc/error.hpp"

namespace assocperc {
namespace {

void require_width(int w) {
  require(w >= 1, "box width must be at least 1");
  if (w > kMaxDpWidth) {
    throw GuardExceeded("exact DP supports widths up to " + std::to_string(kMaxDpWidth) +
                        ", got " + std::to_string(w));
  }
}

std::uint64_t state_count(int w) { return std::uint64_t{1} << (w + 2); }

// Group g enumerates the rows with bit t and the flag cleared; the four
// states {bit t} x {flag} of a group map onto themselves.
inline std::uint64_t group_base(std::uint64_t g, int t) {
  return (g & low_bits(t)) | ((g >> t) << (t + 1));
}

inline void update_group(const double* in, double* out, std::uint64_t base, int w, int t,
                         double p, double q, bool is_last) {
  const std::uint64_t bit = std::uint64_t{1} << t;
  const std::uint64_t right = std::uint64_t{1} << (w + 1);
  // a: mass taking the first branch, b: open position t inside a live interval.
  const double a = (in[base] + in[base | bit]) + in[base | right];
  const double b = in[base | bit | right];
  const bool next_open = !is_last && ((base >> (t + 1)) & 1U);
  out[base | bit] = 0.0;
  out[base | right] = q * b;
  if (next_open) {
    out[base] = q * a;
    out[base | bit | right] = p * (a + b);
  } else {
    out[base] = a;
    out[base | bit | right] = p * b;
  }
}

void check_column(int w, int t, Parity parity, bool is_last) {
  const int limit = parity == Parity::kEven ? w - 1 : w;
  require(t >= 0 && t <= limit, "column " + std::to_string(t) + " is outside the sweep");
  require(is_last == (parity == Parity::kOdd && t == w),
          "the final-column rule applies exactly to the last odd column");
}

}  // namespace

LevelDistribution LevelDistribution::zeros(int w) {
  require_width(w);
  return {w, std::vector<double>(state_count(w), 0.0)};
}

LevelDistribution LevelDistribution::point_mass(int w, const DpState& state) {
  LevelDistribution d = zeros(w);
  require((state.occupancy & ~low_bits(w + 1)) == 0, "occupancy exceeds w+1 bits");
  d.probs[encode_state(state, w)] = 1.0;
  return d;
}

double LevelDistribution::mass() const {
  double sum = 0.0;
  for (double q : probs) sum += q;
  return sum;
}

void dp_column_step_serial(const double* in, double* out, int w, int t, double p,
                           bool is_last_odd_column) {
  const double q = 1.0 - p;
  const std::uint64_t groups = std::uint64_t{1} << w;
  for (std::uint64_t g = 0; g < groups; ++g) {
    update_group(in, out, group_base(g, t), w, t, p, q, is_last_odd_column);
  }
}

void dp_column_step_parallel(const double* in, double* out, int w, int t, double p,
                             bool is_last_odd_column) {
  const double q = 1.0 - p;
  const std::int64_t groups = std::int64_t{1} << w;
#pragma omp parallel for schedule(static) if (groups >= 4096)
  for (std::int64_t g = 0; g < groups; ++g) {
    update_group(in, out, group_base(static_cast<std::uint64_t>(g), t), w, t, p, q,
                 is_last_odd_column);
  }
}

namespace {

void run_column(const double* in, double* out, int w, int t, double p, bool is_last,
                ExecPolicy policy) {
  if (policy == ExecPolicy::kSerial) {
    dp_column_step_serial(in, out, w, t, p, is_last);
  } else {
    dp_column_step_parallel(in, out, w, t, p, is_last);
  }
}

// Starting row of the next level, gathered so that each target sums its
// sources in a fixed order.
void relabel(const double* in, double* out, int w, Parity swept) {
  const std::int64_t n = static_cast<std::int64_t>(state_count(w));
  const std::uint64_t right = std::uint64_t{1} << (w + 1);
  const std::uint64_t top = std::uint64_t{1} << w;
#pragma omp parallel for schedule(static) if (n >= 16384)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto idx = static_cast<std::uint64_t>(i);
    double v = 0.0;
    if (idx & right) {
      const std::uint64_t occ = idx & ~right;
      if (swept == Parity::kOdd) {
        v = in[occ] + in[occ | right];
      } else if ((occ & 1U) == 0) {
        // Next odd level sits at positions 1..w; old position w is dropped.
        const std::uint64_t src = occ >> 1;
        v = ((in[src] + in[src | top]) + in[src | right]) + in[src | top | right];
      }
    }
    out[idx] = v;
  }
}

}  // namespace

LevelDistribution dp_column_step(const LevelDistribution& dist, int t, Parity parity,
                                 double p, bool is_last_odd_column, ExecPolicy policy) {
  require_width(dist.w);
  require(dist.probs.size() == state_count(dist.w), "distribution has the wrong length");
  require_probability(p);
  check_column(dist.w, t, parity, is_last_odd_column);
  LevelDistribution out = LevelDistribution::zeros(dist.w);
  run_column(dist.probs.data(), out.probs.data(), dist.w, t, p, is_last_odd_column, policy);
  return out;
}

namespace {

void sweep_level(std::vector<double>& cur, std::vector<double>& next, int w, Parity parity,
                 double p, ExecPolicy policy) {
  const int last = parity == Parity::kEven ? w - 1 : w;
  for (int t = 0; t <= last; ++t) {
    const bool is_last = parity == Parity::kOdd && t == w;
    run_column(cur.data(), next.data(), w, t, p, is_last, policy);
    cur.swap(next);
  }
  relabel(cur.data(), next.data(), w, parity);
  cur.swap(next);
}

}  // namespace

LevelDistribution dp_level_transition(const LevelDistribution& dist, Parity parity, double p,
                                      ExecPolicy policy) {
  require_width(dist.w);
  require(dist.probs.size() == state_count(dist.w), "distribution has the wrong length");
  require_probability(p);
  LevelDistribution cur = dist;
  std::vector<double> scratch(state_count(dist.w), 0.0);
  sweep_level(cur.probs, scratch, dist.w, parity, p, policy);
  return cur;
}

LevelDistribution level_start(int w, Mask bits, Parity parity) {
  require_width(w);
  if (parity == Parity::kEven) {
    require((bits & ~low_bits(w + 1)) == 0, "subset exceeds an even level");
    return LevelDistribution::point_mass(w, {bits, Flag::kRight});
  }
  require((bits & ~low_bits(w)) == 0, "subset exceeds an odd level");
  return LevelDistribution::point_mass(w, {bits << 1, Flag::kRight});
}

FiniteDistribution occupancy_law(const LevelDistribution& dist, Parity parity) {
  const int width = parity == Parity::kEven ? dist.w + 1 : dist.w;
  std::vector<std::pair<Mask, double>> entries;
  for (std::uint64_t i = 0; i < dist.probs.size(); ++i) {
    if (dist.probs[i] == 0.0) continue;
    const Mask occ = decode_state(i, dist.w).occupancy;
    entries.emplace_back(parity == Parity::kEven ? occ : occ >> 1, dist.probs[i]);
  }
  return make_distribution(width, std::move(entries));
}

double exact_survival(int w, int ell, double p, ExecPolicy policy) {
  require_width(w);
  require(ell >= 0, "box length must be nonnegative");
  require_probability(p);
  const BoxGeometry geom(w, ell);
  std::vector<double> cur = level_start(w, geom.level_mask(0), Parity::kEven).probs;
  std::vector<double> scratch(cur.size(), 0.0);
  for (int level = 0; level < geom.top_level(); ++level) {
    const Parity parity = level % 2 == 0 ? Parity::kEven : Parity::kOdd;
    sweep_level(cur, scratch, w, parity, p, policy);
  }
  double survive = 0.0;
  const std::uint64_t right = std::uint64_t{1} << (w + 1);
  for (std::uint64_t i = 0; i < cur.size(); ++i) {
    if ((i & ~right) != 0) survive += cur[i];
  }
  return survive;
}

}  // namespace assocperc
