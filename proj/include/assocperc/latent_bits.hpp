#pragma once

// Reproducible fields of i.i.d. Bernoulli(p) bits.
//
// Every random choice in the samplers is a coordinatewise-increasing function
// of such bits. A bit is addressed by a LatentKey (two integer coordinates
// plus a channel tag) and is a pure function of (seed, key), so trials can be
// run in any order or thread and sharing a seed across parameters gives
// common random numbers: bit(key) = [uniform(key) < p] only flips 0 -> 1 as p
// grows.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace assocperc {

enum class Channel : std::uint32_t {
  kSite = 1,       // Z(v) of the monotone chain construction
  kZPlus = 2,      // Z+(u) of the pi_{p,p} model
  kZMinus = 3,     // Z-(v) of the pi_{p,p} model
  kEdgeLeft = 4,   // product-kernel edge to the lower-column successor
  kEdgeRight = 5,  // product-kernel edge to the higher-column successor
  kZOut = 6,       // shared bit of all outgoing edges of a vertex
  kZIn = 7,        // shared bit of all incoming edges of a vertex
  kSiteA = 8,      // truncated-square site, see couplings.hpp
  kSiteB = 9,
  kAux = 10,       // auxiliary acceptance bit of the kernel coupling
  kTreeEdge = 11,
  kCornerNE = 12,  // truncated-square sites by face corner, Z^2 coordinates
  kCornerNW = 13,
  kCornerSW = 14,
  kCornerSE = 15,
};

struct LatentKey {
  std::int64_t a = 0;
  std::int64_t b = 0;
  Channel channel = Channel::kSite;

  friend bool operator==(const LatentKey&, const LatentKey&) = default;
};

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_key(std::uint64_t seed, const LatentKey& key) {
  std::uint64_t h = splitmix64(seed ^ static_cast<std::uint64_t>(key.channel));
  h = splitmix64(h ^ static_cast<std::uint64_t>(key.a));
  return splitmix64(h ^ static_cast<std::uint64_t>(key.b) * 0xd1b54a32d192ed03ULL);
}

// Per-trial seed. Independent of how trials are scheduled.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index ^ 0x5851f42d4c957f2dULL));
}

class LatentBits {
 public:
  // Throws InvalidParameter if p is outside [0, 1].
  LatentBits(std::uint64_t seed, double p);

  std::uint64_t seed() const { return seed_; }
  double p() const { return p_; }

  double uniform(const LatentKey& key) const {
    return static_cast<double>(hash_key(seed_, key) >> 11) * 0x1.0p-53;
  }
  bool bit(const LatentKey& key) const { return uniform(key) < p_; }

 private:
  std::uint64_t seed_;
  double p_;
};

// Deterministic bit sources used by tests and by exact-law enumeration.
class ConstantBits {
 public:
  ConstantBits(bool value, double p) : value_(value), p_(p) {}
  double p() const { return p_; }
  bool bit(const LatentKey&) const { return value_; }

 private:
  bool value_;
  double p_;
};

// Explicit assignment of a finite list of keys. Reading a key that is not in
// the list throws std::logic_error unless the source is in recording mode, in
// which case the key is appended and reads as 0.
class AssignedBits {
 public:
  explicit AssignedBits(double p) : p_(p) {}

  double p() const { return p_; }
  bool bit(const LatentKey& key) const;

  void set_recording(bool on) { recording_ = on; }
  const std::vector<LatentKey>& keys() const { return keys_; }
  void set_keys(std::vector<LatentKey> keys);
  void set_assignment(std::uint64_t assignment) { assignment_ = assignment; }

 private:
  double p_;
  bool recording_ = false;
  std::uint64_t assignment_ = 0;
  mutable std::vector<LatentKey> keys_;
};

}  // namespace assocperc
