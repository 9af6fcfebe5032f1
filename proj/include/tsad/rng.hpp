#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace tsad {

/// Deterministic random source. The engine is std::mt19937_64 (bit-exact per
/// the standard); the distributions are hand-rolled here because the standard
/// leaves distribution output unspecified, and reproducibility of scores and
/// corpora is a contract of this library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) { return lo + next_double() * (hi - lo); }

  /// Unbiased uniform integer in {0, ..., n-1}. n must be >= 1.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t umax = ~std::uint64_t{0};
    const std::uint64_t rem = (umax % n + 1) % n;  // 2^64 mod n
    const std::uint64_t bound = umax - rem;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v > bound);
    return v % n;
  }

  /// Standard normal via Box-Muller, one spare cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1;
    do {
      u1 = next_double();
    } while (u1 <= 0.0);
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::mt19937_64 eng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// 64-bit FNV-1a, used to fold string identities into seeds.
inline std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// SplitMix64 finalizer; decorrelates nearby seed values.
inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Derives an independent substream seed from a root seed and a stream label.
/// Adding or removing labels never perturbs the streams of other labels.
inline std::uint64_t derive_seed(std::uint64_t root, std::string_view label) noexcept {
  return splitmix64(root ^ fnv1a64(label));
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(root) ^ (index * 0xD1342543DE82EF95ull + 0x2545F4914F6CDD1Dull));
}

}  // namespace tsad
