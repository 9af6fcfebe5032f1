#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "tsad/error.hpp"
#include "tsad/rng.hpp"
#include "tsad/time_series.hpp"

namespace tsad {

/// Synthetic labeled corpus for desk-scale experiments.
///
/// Each series is an amplitude-a sine carrier with per-series random period,
/// amplitude and phase plus white Gaussian noise, into which 1-3 anomalies
/// are injected at seeded positions:
///   - point spikes: a single sample displaced by 3-8 noise sigmas,
///   - level shifts: a contiguous segment (nominally 32-128 samples) offset
///     by 3-6 noise sigmas.
/// Anomalies are placed in disjoint equal thirds/halves of the series, away
/// from the edges, and the total number of labeled points is capped at
/// floor(0.045*m), so contamination stays below 5%. Labels mark exactly the
/// injected points. Everything is drawn from a per-series substream derived
/// from (seed, series index), so corpora are reproducible and insertion
/// order is irrelevant.
inline std::vector<TimeSeries> synth_corpus(std::uint64_t seed, std::size_t n_series,
                                            std::size_t m) {
  if (n_series < 1) raise(Errc::config_error, "n_series must be >= 1");
  if (m < 512) raise(Errc::config_error, "m must be >= 512");

  std::vector<TimeSeries> corpus;
  corpus.reserve(n_series);
  constexpr double two_pi = 6.283185307179586;

  for (std::size_t idx = 0; idx < n_series; ++idx) {
    Rng rng(derive_seed(seed, "synth/" + std::to_string(idx)));

    const double period = 8.0 + rng.next_double() * 24.0;     // [8, 32)
    const double amplitude = 0.8 + rng.next_double() * 0.8;   // [0.8, 1.6)
    const double phase = rng.next_double() * two_pi;
    const double sigma = 0.05 + rng.next_double() * 0.07;     // [0.05, 0.12)

    TimeSeries ts;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "synth-%03zu", idx);
    ts.id = buf;
    ts.source = "synth";
    ts.values.resize(m);
    ts.labels.assign(m, 0);
    for (std::size_t t = 0; t < m; ++t) {
      ts.values[t] = amplitude * std::sin(two_pi * static_cast<double>(t) / period + phase) +
                     sigma * rng.normal();
    }

    const std::size_t n_anom = 1 + static_cast<std::size_t>(rng.below(3));  // 1..3
    std::size_t budget = m * 45 / 1000;  // hard contamination cap
    const std::size_t region = m / n_anom;
    const std::size_t margin = 16;

    for (std::size_t a = 0; a < n_anom; ++a) {
      const std::size_t lo = a * region + margin;
      const std::size_t hi = (a + 1) * region - margin;  // exclusive
      if (budget == 0 || hi <= lo) break;

      bool spike = rng.next_double() < 0.35;
      std::size_t len = 32 + static_cast<std::size_t>(rng.below(97));  // [32, 128]
      if (len > budget) len = budget;
      if (len < 4 || lo + len >= hi) spike = true;

      const double sign = rng.next_double() < 0.5 ? 1.0 : -1.0;
      if (spike) {
        const std::size_t pos = lo + static_cast<std::size_t>(rng.below(hi - lo));
        const double magnitude = (3.0 + 5.0 * rng.next_double()) * sigma;
        ts.values[pos] += sign * magnitude;
        ts.labels[pos] = 1;
        budget -= 1;
      } else {
        const std::size_t pos = lo + static_cast<std::size_t>(rng.below(hi - lo - len));
        const double magnitude = (3.0 + 3.0 * rng.next_double()) * sigma;
        for (std::size_t t = pos; t < pos + len; ++t) {
          ts.values[t] += sign * magnitude;
          ts.labels[t] = 1;
        }
        budget -= len;
      }
    }
    corpus.push_back(std::move(ts));
  }
  return corpus;
}

}  // namespace tsad
