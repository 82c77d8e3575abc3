#pragma once

#include <cstdint>
#include <cmath>
#include <initializer_list>
#include <random>
#include <span>
#include <vector>

namespace diknn {

// All randomness in the library flows through this header so that runs are
// bit-reproducible across platforms.  The raw stream is std::mt19937_64
// (sequence fixed by the standard); uniform and Gaussian variates are
// deterministic transforms of raw 64-bit draws.  Distributions from
// <random> are never used because their output is implementation-defined.

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derives an independent sub-stream seed from a base seed and a path of
// indices, e.g. derive_seed(base, {grid_index, trial}).
inline std::uint64_t derive_seed(std::uint64_t base,
                                 std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = base;
  std::uint64_t acc = splitmix64(s);
  for (std::uint64_t p : path) {
    s = acc ^ (p + 0x9E3779B97F4A7C15ULL);
    acc = splitmix64(s);
  }
  return acc;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0,1) with 53 random bits.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard Gaussian via Box-Muller; the pair's second value is cached.
  // Fixed draw count per pair, no rejection.
  double gaussian() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    cached_ = r * std::sin(theta);
    have_cached_ = true;
    return r * std::cos(theta);
  }

  // Uniform integer in [0, n) via the 128-bit multiply-shift map.
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace diknn
