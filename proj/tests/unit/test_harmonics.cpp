#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "trisw/errors.hpp"
#include "trisw/harmonics.hpp"

using namespace trisw;
using Catch::Matchers::WithinAbs;
using std::numbers::pi;

namespace {

std::vector<double> sample(double f0, double fs, int cycles, auto&& fn) {
  const int n = static_cast<int>(std::lround(cycles * fs / f0));
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) x[static_cast<std::size_t>(k)] = fn(k / fs);
  return x;
}

}  // namespace

TEST_CASE("pure sine has zero distortion") {
  const auto x = sample(50, 40000, 2, [](double t) { return 3.0 * std::sin(2 * pi * 50 * t + 0.3); });
  CHECK(thd(x, 50, 40000) <= 1e-9);
  const auto ph = harmonic_phasors(x, 50, 40000, 5);
  CHECK_THAT(std::abs(ph[0]), WithinAbs(3.0, 1e-12));
}

TEST_CASE("dc offset does not count as distortion") {
  const auto x = sample(50, 40000, 1, [](double t) { return 100.0 + std::sin(2 * pi * 50 * t); });
  CHECK(thd(x, 50, 40000) <= 1e-9);
}

TEST_CASE("third harmonic at ten percent") {
  const auto x = sample(50, 40000, 3, [](double t) {
    return std::sin(2 * pi * 50 * t) + 0.1 * std::sin(2 * pi * 150 * t + 1.0);
  });
  CHECK_THAT(thd(x, 50, 40000), WithinAbs(0.1, 1e-9));
}

TEST_CASE("square wave limited to 50 harmonics matches its truncated series") {
  // sqrt(sum over odd h in 3..49 of 1/h^2): the square-wave energy the window can see.
  double s = 0.0;
  for (int h = 3; h <= 49; h += 2) s += 1.0 / (h * h);
  const double expected = std::sqrt(s);
  CHECK_THAT(expected, WithinAbs(0.47297, 1e-5));

  const auto x = sample(50, 50 * 1000, 1, [](double t) { return oracle::square_series(50 * t, 49); });
  CHECK_THAT(thd(x, 50, 50000), WithinAbs(expected, 1e-9));
  // The infinite series limit is sqrt(pi^2/8 - 1).
  CHECK(expected < std::sqrt(pi * pi / 8 - 1));
}

TEST_CASE("distortion never exceeds the total ac energy", "[property]") {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 100; ++trial) {
    const int cycles = gen.integer(1, 4);
    std::vector<double> x(static_cast<std::size_t>(cycles * 400));
    for (auto& v : x) v = gen.uniform(-1, 1);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += 5.0 * std::sin(2 * pi * double(k) / 400.0);
    const auto ph = harmonic_phasors(x, 1.0, 400.0, 50);
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= double(x.size());
    double ac = 0.0;
    for (double v : x) ac += (v - mean) * (v - mean);
    ac /= double(x.size());
    double harmonic = 0.0;
    for (const auto& p : ph) harmonic += std::norm(p) / 2.0;
    CHECK(harmonic <= ac * (1 + 1e-12));
  }
}

TEST_CASE("window and rate checks") {
  std::vector<double> x(900, 1.0);
  CHECK_THROWS_AS(thd(x, 50, 40000), ConfigError);  // 1.125 cycles
  std::vector<double> y(100, 1.0);
  CHECK_THROWS_AS(thd(y, 50, 5000, 50), ConfigError);  // fs <= 2 * 50 * 50
  std::vector<double> z(800, 0.0);
  CHECK_THROWS_AS(thd(z, 50, 40000), NumericError);
  std::vector<double> short_window(400, 0.0);
  CHECK_THROWS_AS(thd(short_window, 50, 40000), ConfigError);  // half a cycle
}
