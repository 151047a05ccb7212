#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ceplace {

/// splitmix64 step; used to derive independent seeds from a master seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t salt) {
  std::uint64_t s = master ^ (0x9e3779b97f4a7c15ULL * (salt + 1));
  return splitmix64(s);
}

/// FNV-1a, for folding string keys (dag ids, dataset names) into seeds.
inline std::uint64_t hash64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Seeded random stream with hand-rolled distributions so that sequences are
/// identical across standard-library implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform double in [0, 1).
  double real01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi].
  double real_in(double lo, double hi) { return lo + (hi - lo) * real01(); }

  /// Uniform integer in [0, n), n > 0. Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n + 1) % n;
    std::uint64_t x;
    do {
      x = eng_();
    } while (x > limit);
    return x % n;
  }

  int int_in(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool bernoulli(double p) { return real01() < p; }

private:
  std::mt19937_64 eng_;
};

}  // namespace ceplace
