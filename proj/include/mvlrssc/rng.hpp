#pragma once

#include <cstdint>
#include <random>

namespace mvlrssc {

/// splitmix64 mixing step; used to derive independent seed streams.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic stream seed for (base, a, b), e.g. (seed, grid point,
/// k-means restart).
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(base ^ splitmix64(a ^ splitmix64(b)));
}

/**
 * @brief Seeded generator with portable uniform and normal draws.
 *
 * std::mt19937_64 output is fully specified by the standard; the
 * distributions here avoid the implementation-defined std:: ones so the same
 * seed yields the same stream on every platform.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1), 53 random bits.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, n), n >= 1. Rejection sampling.
  int uniform_int(int n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<int>(x % bound);
  }

  /// Standard normal via Box-Muller; generates pairs, caches the second.
  double normal();

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace mvlrssc
