#include "assocperc/couplings.hpp"

#include <cmath>

namespace assocperc {

std::string kernel_name(KernelKind kind) {
  switch (kind) {
    case KernelKind::kProduct:
      return "product";
    case KernelKind::kPiPP:
      return "pi_pp";
    case KernelKind::kSiblingBlock:
      return "sibling_block";
    case KernelKind::kTruncatedSquare:
      return "truncated_square";
  }
  throw InvalidParameter("unknown kernel kind");
}

KernelKind parse_kernel(const std::string& name) {
  for (KernelKind k : {KernelKind::kProduct, KernelKind::kPiPP, KernelKind::kSiblingBlock,
                       KernelKind::kTruncatedSquare}) {
    if (kernel_name(k) == name) return k;
  }
  throw InvalidParameter("unknown kernel kind '" + name + "'");
}

void validate_kernel_step(const LevelKernel& k, const LevelSubset& active,
                          const BoxGeometry& geom, double bits_p) {
  require_probability(k.p, "kernel p");
  require(bits_p == k.p, "latent bits must carry the kernel parameter");
  require(static_cast<int>(k.kind) <= static_cast<int>(KernelKind::kTruncatedSquare),
          "unknown kernel kind");
  validate_step(active, geom, bits_p);
}

bool aux_is_certain(const LevelKernel& k, int level) {
  const bool even = level % 2 == 0;
  switch (k.kind) {
    case KernelKind::kProduct:
      return true;
    case KernelKind::kPiPP:
      return false;
    case KernelKind::kSiblingBlock:
      return !even;
    case KernelKind::kTruncatedSquare:
      return !even;
  }
  throw InvalidParameter("unknown kernel kind");
}

FiniteDistribution kernel_row(const LevelKernel& k, const LevelSubset& w,
                              const BoxGeometry& geom) {
  validate_kernel_step(k, w, geom, k.p);
  return enumerate_law(geom.level_width(w.level + 1), k.p, [&](const AssignedBits& z) {
    return kernel_step_mask(k, w.bits, w.level, geom, z);
  });
}

Mask BondConfig::mask() const {
  require(open.size() <= 63, "bond mask holds at most 63 bonds");
  Mask m = 0;
  for (std::size_t i = 0; i < open.size(); ++i) {
    if (open[i]) m |= Mask{1} << i;
  }
  return m;
}

BondConfig truncated_square_sample(const Window& win, double p, std::uint64_t seed) {
  return truncated_square_bonds(win, LatentBits(seed, p));
}

FiniteDistribution truncated_square_law(const Window& win, double p) {
  require_probability(p);
  require(win.num_bonds() <= 63, "window has too many bonds for a mask");
  return enumerate_law(win.num_bonds(), p, [&](const AssignedBits& z) {
    return truncated_square_bonds(win, z).mask();
  });
}

}  // namespace assocperc
