#include "trisw/harmonics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "trisw/errors.hpp"

namespace trisw {

std::vector<std::complex<double>> harmonic_phasors(std::span<const double> samples, double f0,
                                                   double fs, int max_harmonic) {
  if (!(f0 > 0.0) || !(fs > 0.0) || max_harmonic < 1) {
    throw ConfigError("thd: f0, fs and max_harmonic must be positive");
  }
  if (!(fs > 2.0 * max_harmonic * f0)) {
    std::ostringstream os;
    os << "thd: fs=" << fs << " Hz does not resolve harmonic " << max_harmonic << " of "
       << f0 << " Hz";
    throw ConfigError(os.str());
  }
  const auto n = samples.size();
  const double cycles = static_cast<double>(n) * f0 / fs;
  const double whole = std::round(cycles);
  if (whole < 1.0 || std::abs(cycles - whole) > 1e-6) {
    std::ostringstream os;
    os << "thd: window of " << n << " samples spans " << cycles
       << " fundamental cycles; an integer number >= 1 is required";
    throw ConfigError(os.str());
  }
  const auto k1 = static_cast<std::size_t>(whole);

  std::vector<std::complex<double>> out(static_cast<std::size_t>(max_harmonic));
  for (int h = 1; h <= max_harmonic; ++h) {
    // DFT bin h*k1; the angle index is reduced mod n to keep the argument small.
    const std::size_t bin = static_cast<std::size_t>(h) * k1;
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t m = (bin * i) % n;
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(n);
      acc += samples[i] * std::complex<double>(std::cos(angle), -std::sin(angle));
    }
    out[static_cast<std::size_t>(h - 1)] = 2.0 * acc / static_cast<double>(n);
  }
  return out;
}

double thd(std::span<const double> samples, double f0, double fs, int max_harmonic) {
  const auto x = harmonic_phasors(samples, f0, fs, max_harmonic);
  const double fundamental = std::abs(x[0]);
  if (fundamental == 0.0) {
    throw NumericError("thd: fundamental component is zero");
  }
  double harmonics = 0.0;
  for (std::size_t h = 1; h < x.size(); ++h) harmonics += std::norm(x[h]);
  return std::sqrt(harmonics) / fundamental;
}

}  // namespace trisw
