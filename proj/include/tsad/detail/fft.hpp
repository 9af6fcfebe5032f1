#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace tsad::detail {

inline constexpr double kPi = 3.14159265358979323846;

/// Full DFT of a real signal: X[k] = sum_t x[t] * exp(-2*pi*i*k*t/n).
/// Iterative radix-2 when n is a power of two (the default window sizes),
/// direct evaluation otherwise. Windows are small, so the direct path is fine.
inline std::vector<std::complex<double>> dft(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::complex<double>> out(n);
  if (n == 0) return out;
  const bool pow2 = (n & (n - 1)) == 0;
  if (!pow2) {
    for (std::size_t k = 0; k < n; ++k) {
      double re = 0.0, im = 0.0;
      for (std::size_t t = 0; t < n; ++t) {
        const double a = -2.0 * kPi * static_cast<double>(k) * static_cast<double>(t) /
                         static_cast<double>(n);
        re += x[t] * std::cos(a);
        im += x[t] * std::sin(a);
      }
      out[k] = {re, im};
    }
    return out;
  }
  // bit-reversal permutation
  for (std::size_t i = 0; i < n; ++i) out[i] = x[i];
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(out[i], out[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * kPi / static_cast<double>(len);
    const std::complex<double> wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const auto u = out[i + j];
        const auto v = out[i + j + len / 2] * w;
        out[i + j] = u + v;
        out[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  return out;
}

}  // namespace tsad::detail
