#pragma once

#include <cstdint>
#include <random>

#include "spintrng/vec3.hpp"

// Reproducible random streams.  Every trial/instance/resample owns a private
// stream whose seed is derived statelessly from (base seed, domain, index),
// so results do not depend on scheduling order or thread count.
//
// Gaussian draws use an explicit Marsaglia polar sampler instead of
// std::normal_distribution, whose algorithm is implementation-defined and
// therefore not reproducible across standard libraries.

namespace spintrng {

// Seed-space partitions.  Keeping domains distinct guarantees that e.g.
// bootstrap resampling never replays trial noise.
enum class SeedDomain : std::uint64_t {
  trial = 1,
  instance = 2,
  bootstrap = 3,
  calibration = 4,
  reference = 5,
  oracle = 6,
};

namespace detail {
// splitmix64 finalizer: bijective 64-bit mix with good avalanche.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}
inline constexpr std::uint64_t golden64 = 0x9E3779B97F4A7C15ull;
}  // namespace detail

// Stateless seed derivation: hash chain over (base, domain, index).
constexpr std::uint64_t derive_seed(std::uint64_t base_seed, SeedDomain domain,
                                    std::uint64_t index) {
  std::uint64_t z = detail::mix64(base_seed + detail::golden64);
  z = detail::mix64(z + detail::golden64 * static_cast<std::uint64_t>(domain));
  return detail::mix64(z + detail::golden64 * index);
}

// Per-trial random stream: mt19937_64 (state construction from a single seed
// is fully specified by the standard) plus portable uniform/normal mappings.
class TrialRng {
 public:
  explicit TrialRng(std::uint64_t seed) : engine_(seed) {}
  TrialRng(std::uint64_t base_seed, SeedDomain domain, std::uint64_t index)
      : engine_(derive_seed(base_seed, domain, index)) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal, Marsaglia polar method (pair-cached).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform01() - 1.0;
      v = 2.0 * uniform01() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double f = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * f;
    has_spare_ = true;
    return u * f;
  }

  Vec3 normal3() {
    const double a = normal();
    const double b = normal();
    const double c = normal();
    return {a, b, c};
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace spintrng
