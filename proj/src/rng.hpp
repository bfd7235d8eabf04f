#pragma once

#include <cmath>
#include <cstdint>

namespace nf {

// Splitmix64 finalizer; bijective, strong mixing.
inline uint64_t mix64(uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Counter-keyed per-frame stream: every (seed, frame, slot) triple yields one
// fixed value, so draws do not depend on evaluation order or branches taken.
class FrameRng {
 public:
  FrameRng(uint64_t seed, uint64_t frame)
      : base_(mix64(seed + (frame + 1) * 0x9E3779B97F4A7C15ull)) {}

  uint64_t bits(uint32_t slot) const {
    return mix64(base_ + (static_cast<uint64_t>(slot) + 1) * 0x9E3779B97F4A7C15ull);
  }

  // [0, 1)
  double uniform(uint32_t slot) const { return (bits(slot) >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes slots slot and slot+1.
  double gaussian(uint32_t slot) const {
    const double u1 = ((bits(slot) >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform(slot + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238462643 * u2);
  }

 private:
  uint64_t base_;
};

}  // namespace nf
