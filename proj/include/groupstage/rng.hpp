#pragma once

#include <cstdint>

namespace groupstage {

// 64-bit finalizer (MurmurHash3); full-avalanche bijection.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 33;
  z *= 0xff51afd7ed558ccdULL;
  z ^= z >> 33;
  z *= 0xc4ceb9fe1a85ec53ULL;
  z ^= z >> 33;
  return z;
}

// Deterministic random stream addressed by (seed, iteration, slot).
// Output n is a pure function of the derived key and the call counter
// (splitmix64 over a Weyl sequence), so streams with distinct addresses can
// be consumed in any order, on any thread and on any platform with identical
// results. Not cryptographic.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed, std::uint64_t iteration = 0,
                        std::uint64_t slot = 0)
      : key_(derive(seed, iteration, slot)) {}

  // Child stream addressed relative to this one. Independent of how much of
  // the parent has been consumed.
  RandomStream substream(std::uint64_t slot) const {
    RandomStream child(0);
    child.key_ = mix64(key_ ^ mix64(slot + kSalt));
    child.counter_ = 0;
    return child;
  }

  std::uint64_t next_bits() {
    counter_ += kWeyl;
    std::uint64_t z = key_ + counter_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(next_bits() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  static constexpr std::uint64_t kWeyl = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kSalt = 0x5851f42d4c957f2dULL;

  static std::uint64_t derive(std::uint64_t seed, std::uint64_t iteration,
                              std::uint64_t slot) {
    return mix64(seed ^ mix64(iteration ^ mix64(slot + kSalt)));
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace groupstage
