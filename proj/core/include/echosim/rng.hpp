#pragma once

#include <cmath>
#include <cstdint>

namespace echosim {

// Deterministic PRNG (splitmix64). Hand-rolled instead of <random> so that
// identical seeds produce identical streams on every platform/stdlib, which
// the reproducibility guarantees of the simulator depend on.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 6.283185307179586476925286766559 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  // Fair coin as +1 / -1.
  int coin_sign() { return (next_u64() & 1ull) ? +1 : -1; }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Decorrelated child seed for a named stream. Used to keep e.g. sensor noise
// and steering decisions on independent streams for the same run seed.
inline std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t salt) {
  Rng r(seed ^ (0xA0761D6478BD642Full * (salt + 1ull)));
  return r.next_u64();
}

}  // namespace echosim
