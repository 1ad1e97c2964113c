#pragma once

// Level kernels between consecutive levels of a box and monotone couplings
// with the lower-bound chain.
//
// Every kernel opens edges as an increasing function of latent Bernoulli(p)
// bits that belong to one layer (the edges from level i to level i+1), so
// distinct layers are independent. Bits are addressed as
//   {layer, 2*col + side, channel}   side 0: source level, 1: target level
//   {layer, col, kEdgeLeft/kEdgeRight} for product edges out of `col`
//   {layer, start, kAux}              auxiliary bit of an interval
//
// Edge directions: an even column c reaches odd columns c-1 ("left step")
// and c ("right step"); an odd column c reaches even columns c and c+1.

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "assocperc/distribution.hpp"
#include "assocperc/error.hpp"
#include "assocperc/geometry.hpp"
#include "assocperc/latent_bits.hpp"
#include "assocperc/markov_chain.hpp"

namespace assocperc {

enum class KernelKind : std::uint8_t { kProduct, kPiPP, kSiblingBlock, kTruncatedSquare };

struct LevelKernel {
  KernelKind kind = KernelKind::kProduct;
  double p = 0.5;

  // Probability that a given edge is open.
  double marginal() const {
    return kind == KernelKind::kPiPP || kind == KernelKind::kTruncatedSquare ? p * p : p;
  }
};

std::string kernel_name(KernelKind kind);
// Accepts product, pi_pp, sibling_block, truncated_square.
KernelKind parse_kernel(const std::string& name);

namespace detail {

inline LatentKey vertex_key(int layer, int col, int side, Channel ch) {
  return {layer, 2 * static_cast<std::int64_t>(col) + side, ch};
}

// Both operands are always read so the set of keys does not depend on values.
inline bool both(bool x, bool y) { return x && y; }

}  // namespace detail

// Status of the edge from column u on `layer` to its left or right successor.
template <class Bits>
bool edge_open(const LevelKernel& k, int layer, int u, bool right_step, const Bits& z) {
  using detail::vertex_key;
  const bool even = layer % 2 == 0;
  const int v = even ? (right_step ? u : u - 1) : (right_step ? u + 1 : u);
  switch (k.kind) {
    case KernelKind::kProduct:
      return z.bit({layer, u, right_step ? Channel::kEdgeRight : Channel::kEdgeLeft});
    case KernelKind::kPiPP: {
      const bool plus = z.bit(vertex_key(layer, u, 0, Channel::kZPlus));
      const bool minus = z.bit(vertex_key(layer, v, 1, Channel::kZMinus));
      return detail::both(plus, minus);
    }
    case KernelKind::kSiblingBlock:
      return even ? z.bit(vertex_key(layer, u, 0, Channel::kZOut))
                  : z.bit(vertex_key(layer, v, 1, Channel::kZIn));
    case KernelKind::kTruncatedSquare: {
      // Each vertex carries two sites; an edge needs the site of each endpoint
      // that lies in the small face containing the edge.
      Channel cu = Channel::kSiteA;
      Channel cv = Channel::kSiteB;
      if (even && right_step) cv = Channel::kSiteA;
      if (!even && right_step) cu = Channel::kSiteB;
      const bool su = z.bit(vertex_key(layer, u, 0, cu));
      const bool sv = z.bit(vertex_key(layer, v, 1, cv));
      return detail::both(su, sv);
    }
  }
  throw InvalidParameter("unknown kernel kind");
}

// Columns of level+1 joined to `active` by an open edge.
template <class Bits>
Mask kernel_step_mask(const LevelKernel& k, Mask active, int level, const BoxGeometry& geom,
                      const Bits& z) {
  const Mask next_mask = geom.level_mask(level + 1);
  const bool even = level % 2 == 0;
  Mask out = 0;
  for (Mask rest = active; rest != 0; rest &= rest - 1) {
    const int u = std::countr_zero(rest);
    const int left = even ? u - 1 : u;
    const int right = even ? u : u + 1;
    if (left >= 0 && ((next_mask >> left) & 1U)) {
      if (edge_open(k, level, u, false, z)) out |= Mask{1} << left;
    }
    if ((next_mask >> right) & 1U) {
      if (edge_open(k, level, u, true, z)) out |= Mask{1} << right;
    }
  }
  return out;
}

void validate_kernel_step(const LevelKernel& k, const LevelSubset& active,
                          const BoxGeometry& geom, double bits_p);

template <class Bits>
LevelSubset kernel_step(const LevelKernel& k, const LevelSubset& active,
                        const BoxGeometry& geom, const Bits& z) {
  validate_kernel_step(k, active, geom, z.p());
  const int next = active.level + 1;
  return {geom.level_width(next), kernel_step_mask(k, active.bits, active.level, geom, z),
          next};
}

// Y of the kernel coupling is Bernoulli(marginal / P[right edge | left edge]),
// which for the built-ins is either 1 or p.
bool aux_is_certain(const LevelKernel& k, int level);

struct CoupledPair {
  LevelSubset lower;
  LevelSubset upper;
};

// One step of (chain at the kernel's marginal, kernel) with lower ⊆ upper.
template <class Bits>
std::pair<Mask, Mask> coupled_x_vs_kernel_mask(const LevelKernel& k, Mask bits, int level,
                                               const BoxGeometry& geom, const Bits& z) {
  const Mask upper = kernel_step_mask(k, bits, level, geom, z);
  Mask lower = 0;
  for (Mask rest = bits; rest != 0;) {
    const int start = std::countr_zero(rest);
    const int length = std::countr_one(rest >> start);
    const Mask interval = low_bits(length) << start;
    rest &= ~interval;
    const IntervalFan fan = interval_fan(interval, level, geom);
    const bool y_bit = z.bit({level, start, Channel::kAux});
    if (!fan.full) {
      // Only even levels are cut by the box. Pair odd column v with even
      // column v if the interval touches column 0, else with column v + 1.
      const bool lower_parent = start == 0;
      for (Mask f = fan.successors; f != 0; f &= f - 1) {
        const int v = std::countr_zero(f);
        const int u = lower_parent ? v : v + 1;
        if (edge_open(k, level, u, lower_parent, z)) lower |= Mask{1} << v;
      }
      continue;
    }
    // Full fan: u_j = start + j - 1, v_j = lowest successor + j - 1.
    const int v0 = std::countr_zero(fan.successors);
    const bool y = aux_is_certain(k, level) ? true : y_bit;
    int j_star = -1;
    for (int j = 0; j < length; ++j) {
      // Read every left edge so the key set is fixed.
      const bool e = edge_open(k, level, start + j, false, z);
      if (e && j_star < 0) j_star = j;
    }
    std::vector<bool> right_edges(length);
    for (int j = 0; j < length; ++j) right_edges[j] = edge_open(k, level, start + j, true, z);
    if (j_star < 0) continue;
    lower |= Mask{1} << (v0 + j_star);
    for (int j = j_star + 1; j <= length; ++j) {
      bool open = right_edges[j - 1];
      if (j == j_star + 1) open = open && y;
      if (open) lower |= Mask{1} << (v0 + j);
    }
  }
  return {lower, upper};
}

template <class Bits>
CoupledPair coupled_step_x_vs_kernel(const LevelSubset& w, const LevelKernel& k,
                                     const BoxGeometry& geom, const Bits& z) {
  validate_kernel_step(k, w, geom, z.p());
  const auto [lower, upper] = coupled_x_vs_kernel_mask(k, w.bits, w.level, geom, z);
  const int next = w.level + 1;
  return {{geom.level_width(next), lower, next}, {geom.level_width(next), upper, next}};
}

// One step of (pi_{p,p}, chain at p) with the pi_{p,p} side ⊆ chain side.
template <class Bits>
std::pair<Mask, Mask> coupled_eta_vs_x_mask(Mask bits, int level, const BoxGeometry& geom,
                                            const Bits& z) {
  using detail::vertex_key;
  const LevelKernel pi{KernelKind::kPiPP, z.p()};
  const Mask eta = kernel_step_mask(pi, bits, level, geom, z);
  Mask x = 0;
  for (Mask rest = bits; rest != 0;) {
    const int start = std::countr_zero(rest);
    const int length = std::countr_one(rest >> start);
    const Mask interval = low_bits(length) << start;
    rest &= ~interval;
    const IntervalFan fan = interval_fan(interval, level, geom);
    std::vector<bool> minus;
    for (Mask f = fan.successors; f != 0; f &= f - 1) {
      minus.push_back(z.bit(vertex_key(level, std::countr_zero(f), 1, Channel::kZMinus)));
    }
    const int v0 = std::countr_zero(fan.successors);
    if (!fan.full) {
      for (std::size_t i = 0; i < minus.size(); ++i) {
        if (minus[i]) x |= Mask{1} << (v0 + static_cast<int>(i));
      }
      continue;
    }
    int j_star = -1;
    for (int j = 0; j < length; ++j) {
      const bool plus = z.bit(vertex_key(level, start + j, 0, Channel::kZPlus));
      if (plus && j_star < 0) j_star = j;
    }
    if (j_star < 0) continue;
    x |= Mask{1} << (v0 + j_star);
    for (int j = j_star + 1; j <= length; ++j) {
      if (minus[j]) x |= Mask{1} << (v0 + j);
    }
  }
  return {eta, x};
}

template <class Bits>
CoupledPair coupled_step_eta_vs_x(const LevelSubset& w, const BoxGeometry& geom,
                                  const Bits& z) {
  validate_step(w, geom, z.p());
  const auto [eta, x] = coupled_eta_vs_x_mask(w.bits, w.level, geom, z);
  const int next = w.level + 1;
  return {{geom.level_width(next), eta, next}, {geom.level_width(next), x, next}};
}

// Exact one-step laws by enumerating the latent bits involved.
FiniteDistribution kernel_row(const LevelKernel& k, const LevelSubset& w,
                              const BoxGeometry& geom);

// Window of Z^2 with corner (x0, y0) and nx by ny vertices.
struct Window {
  int x0 = 0;
  int y0 = 0;
  int nx = 1;
  int ny = 1;

  int num_bonds() const { return (nx - 1) * ny + nx * (ny - 1); }
};

// Horizontal bonds row by row (y outer, x inner), then vertical bonds the same way.
struct BondConfig {
  Window window;
  std::vector<std::uint8_t> open;

  // Bond k of the fixed order at bit k. Requires at most 63 bonds.
  Mask mask() const;
};

// Bond configuration on `window` of the contracted truncated-square model:
// each vertex carries two Bernoulli(p) sites, one per small face at the vertex
// (faces whose lower-left corner has even coordinate sum), and a bond is open
// iff the sites of both endpoints in the face containing the bond are open.
template <class Bits>
BondConfig truncated_square_bonds(const Window& win, const Bits& z) {
  require(win.nx >= 1 && win.ny >= 1, "window must contain at least one vertex");
  auto site = [&](std::int64_t x, std::int64_t y, Channel ch) { return z.bit({x, y, ch}); };
  BondConfig out{win, {}};
  out.open.reserve(win.num_bonds());
  for (int j = 0; j < win.ny; ++j) {
    for (int i = 0; i + 1 < win.nx; ++i) {
      const std::int64_t x = win.x0 + i, y = win.y0 + j;
      const bool face_above = ((x + y) % 2 + 2) % 2 == 0;
      const bool a = site(x, y, face_above ? Channel::kCornerNE : Channel::kCornerSE);
      const bool b = site(x + 1, y, face_above ? Channel::kCornerNW : Channel::kCornerSW);
      out.open.push_back(a && b);
    }
  }
  for (int j = 0; j + 1 < win.ny; ++j) {
    for (int i = 0; i < win.nx; ++i) {
      const std::int64_t x = win.x0 + i, y = win.y0 + j;
      const bool face_right = ((x + y) % 2 + 2) % 2 == 0;
      const bool a = site(x, y, face_right ? Channel::kCornerNE : Channel::kCornerNW);
      const bool b = site(x, y + 1, face_right ? Channel::kCornerSE : Channel::kCornerSW);
      out.open.push_back(a && b);
    }
  }
  return out;
}

BondConfig truncated_square_sample(const Window& win, double p, std::uint64_t seed);

// Exact law of the bond mask on a small window.
FiniteDistribution truncated_square_law(const Window& win, double p);

}  // namespace assocperc
