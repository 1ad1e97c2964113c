#pragma once

// Exact law of the chain level by level, one column at a time.
//
// Within a level transition the state is a row of w+1 bits where positions
// below t already describe the next level and positions from t on still
// describe the current one, plus a flag telling whether the interval being
// swept has already produced an open successor (r) or not (l). A state is
// encoded as occupancy | flag << (w+1), so a distribution is a dense vector
// of 2^(w+2) doubles.
//
// Odd levels are stored shifted up by one position with position 0 empty.

#include <cstdint>
#include <vector>

#include "assocperc/distribution.hpp"
#include "assocperc/geometry.hpp"

namespace assocperc {

enum class Flag : std::uint8_t { kLeft = 0, kRight = 1 };
enum class Parity : std::uint8_t { kEven = 0, kOdd = 1 };
enum class ExecPolicy : std::uint8_t { kSerial, kParallel };

inline constexpr int kMaxDpWidth = 24;

struct DpState {
  Mask occupancy = 0;
  Flag flag = Flag::kRight;

  friend bool operator==(const DpState&, const DpState&) = default;
};

inline std::uint64_t encode_state(const DpState& s, int w) {
  return s.occupancy | (static_cast<std::uint64_t>(s.flag) << (w + 1));
}

inline DpState decode_state(std::uint64_t index, int w) {
  return {index & low_bits(w + 1),
          ((index >> (w + 1)) & 1U) ? Flag::kRight : Flag::kLeft};
}

struct LevelDistribution {
  int w = 0;
  std::vector<double> probs;

  // Throws InvalidParameter unless 1 <= w <= kMaxDpWidth.
  static LevelDistribution zeros(int w);
  static LevelDistribution point_mass(int w, const DpState& state);

  double at(const DpState& s) const { return probs[encode_state(s, w)]; }
  double mass() const;
};

// One column update. Valid columns are 0 <= t < w for even parity and
// 0 <= t <= w for odd parity; is_last_odd_column must be set exactly for the
// odd column t = w.
LevelDistribution dp_column_step(const LevelDistribution& dist, int t, Parity parity,
                                 double p, bool is_last_odd_column,
                                 ExecPolicy policy = ExecPolicy::kParallel);

// Raw kernels over vectors of length 2^(w+2). `out` must not alias `in`.
void dp_column_step_serial(const double* in, double* out, int w, int t, double p,
                           bool is_last_odd_column);
void dp_column_step_parallel(const double* in, double* out, int w, int t, double p,
                             bool is_last_odd_column);

// Full sweep of one level of the given parity followed by the relabelling
// that turns the swept row into the starting row of the next level.
LevelDistribution dp_level_transition(const LevelDistribution& dist, Parity parity, double p,
                                      ExecPolicy policy = ExecPolicy::kParallel);

// Distribution of the starting row of a level holding `bits`.
LevelDistribution level_start(int w, Mask bits, Parity parity);

// Law of the level subset held by a starting row, flag marginalised.
FiniteDistribution occupancy_law(const LevelDistribution& dist, Parity parity);

// P[chain started from the full bottom level is nonempty on the top level]
// in the box of width w and length ell. Requires 1 <= w <= kMaxDpWidth.
double exact_survival(int w, int ell, double p, ExecPolicy policy = ExecPolicy::kParallel);

}  // namespace assocperc
