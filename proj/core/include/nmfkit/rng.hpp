#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace nmfkit {

/// SplitMix64 finalizer, used to derive independent streams from one seed.
std::uint64_t mix64(std::uint64_t x);

/// Deterministic random stream. Distribution sampling is implemented on top
/// of raw 64-bit draws so results do not depend on the standard library's
/// distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(mix64(seed ^ kInitTag)) {}

  /// Derive an independent stream from (seed, path). Streams with different
  /// paths are decorrelated regardless of how many draws each consumes.
  static Rng derive(std::uint64_t seed,
                    std::initializer_list<std::uint64_t> path) {
    std::uint64_t h = seed;
    for (std::uint64_t p : path) h = mix64(h + 0x9E3779B97F4A7C15ull * (p + 1));
    return Rng(h);
  }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [lo, hi] inclusive.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  /// Standard normal via Box-Muller (pairs cached).
  double normal();

 private:
  static constexpr std::uint64_t kInitTag = 0x6E6D666B69742121ull;
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace nmfkit
