#pragma once

#include <complex>
#include <span>
#include <vector>

namespace trisw {

inline constexpr int kDefaultMaxHarmonic = 50;

/// Single-sided complex amplitudes of harmonics 1..max_harmonic of f0 over a
/// window holding an integer number of fundamental cycles.
/// Throws ConfigError if the window is not an integer number (>= 1) of
/// cycles or if fs <= 2 * max_harmonic * f0.
std::vector<std::complex<double>> harmonic_phasors(std::span<const double> samples, double f0,
                                                   double fs, int max_harmonic);

/// sqrt(sum_{h=2..H} |X_h|^2) / |X_1|.
double thd(std::span<const double> samples, double f0, double fs,
           int max_harmonic = kDefaultMaxHarmonic);

}  // namespace trisw
