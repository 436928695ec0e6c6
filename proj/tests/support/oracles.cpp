#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace oracle {

trisw::StateVector rk4(const trisw::ContinuousModel& m, const trisw::StateVector& x0,
                       const trisw::InputVector& u, double duration, int steps) {
  const double h = duration / steps;
  const auto f = [&](const trisw::StateVector& x) -> trisw::StateVector {
    return m.g * x + m.h * u;
  };
  trisw::StateVector x = x0;
  for (int i = 0; i < steps; ++i) {
    const trisw::StateVector k1 = f(x);
    const trisw::StateVector k2 = f(x + 0.5 * h * k1);
    const trisw::StateVector k3 = f(x + 0.5 * h * k2);
    const trisw::StateVector k4 = f(x + h * k3);
    x += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return x;
}

std::array<double, 5> affine_step(const trisw::DiscreteModel& m, const std::array<double, 5>& x,
                                  const std::array<double, 3>& u) {
  std::array<double, 5> y{};
  for (int r = 0; r < 5; ++r) {
    double acc = 0.0;
    for (int c = 0; c < 5; ++c) acc += m.phi(r, c) * x[c];
    for (int c = 0; c < 3; ++c) acc += m.gamma(r, c) * u[c];
    y[r] = acc;
  }
  return y;
}

namespace {

double penalty(const std::array<double, 5>& z, const trisw::MpcConfig& cfg) {
  double s = 0.0;
  for (int p = 0; p < 3; ++p) {
    const double d = z[2 + p] - cfg.beta[p] * cfg.i_sat[p];
    s += cfg.lambda[p] * d * d;
  }
  return s;
}

// Cost of one explicit switching sequence.
double sequence_cost(const std::array<double, 5>& x0, const std::array<double, 3>& u,
                     const std::vector<int>& seq, const std::vector<trisw::VoltageRef>& refs,
                     const trisw::ModelBank& bank, const trisw::MpcConfig& cfg) {
  double tracking = 0.0;
  double sat = cfg.saturation_on_predicted ? 0.0 : penalty(x0, cfg);
  auto z = x0;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    z = affine_step(bank[seq[j]], z, u);
    const double eb = z[0] - refs[j].v_bn;
    const double ec = z[1] - refs[j].v_cn;
    tracking += eb * eb + ec * ec;
    if (cfg.saturation_on_predicted) sat += penalty(z, cfg);
  }
  return tracking + sat;
}

}  // namespace

BruteForce brute_force_select(const trisw::StateVector& x, const trisw::InputVector& u,
                              const std::vector<trisw::VoltageRef>& refs,
                              const trisw::ModelBank& bank, const trisw::MpcConfig& cfg, int prev) {
  BruteForce out;
  const std::array<double, 5> x0{x(0), x(1), x(2), x(3), x(4)};
  const std::array<double, 3> u0{u(0), u(1), u(2)};
  const std::size_t n = refs.size();

  for (int first = 0; first < 8; ++first) {
    if (cfg.scheme == trisw::PredictionScheme::kSimplified) {
      out.totals[first] = sequence_cost(x0, u0, std::vector<int>(n, first), refs, bank, cfg);
      ++out.evaluations;
      continue;
    }
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> seq(n, 0);
    seq[0] = first;
    // Odometer over positions 1..n-1.
    while (true) {
      best = std::min(best, sequence_cost(x0, u0, seq, refs, bank, cfg));
      ++out.evaluations;
      std::size_t pos = 1;
      while (pos < n && seq[pos] == 7) seq[pos++] = 0;
      if (pos >= n) break;
      ++seq[pos];
    }
    out.totals[first] = best;
  }

  double c_min = out.totals[0];
  int arg = 0;
  for (int i = 1; i < 8; ++i) {
    if (out.totals[i] < c_min) {
      c_min = out.totals[i];
      arg = i;
    }
  }
  const bool prev_ties = prev >= 0 && prev < 8 &&
                         std::abs(out.totals[prev] - c_min) <= 1e-12 * std::max(1.0, c_min);
  out.chosen = (cfg.tie_break == trisw::TieBreak::kPreferPrevious && prev_ties) ? prev : arg;
  return out;
}

double square_series(double t, int max_harmonic) {
  double s = 0.0;
  for (int h = 1; h <= max_harmonic; h += 2) {
    s += 4.0 / (std::numbers::pi * h) * std::sin(2.0 * std::numbers::pi * h * t);
  }
  return s;
}

}  // namespace oracle
