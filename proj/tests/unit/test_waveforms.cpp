#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "trisw/errors.hpp"
#include "trisw/waveforms.hpp"

using namespace trisw;
using Catch::Matchers::WithinAbs;
using std::numbers::pi;

TEST_CASE("references at quarter period") {
  ReferenceConfig cfg;
  const double t = 1.0 / (4.0 * cfg.freq);
  const auto v = phase_references(t, cfg);
  CHECK_THAT(v.v_an, WithinAbs(100.0, 1e-12));
  CHECK_THAT(v.v_bn, WithinAbs(200.0, 1e-12));
  CHECK_THAT(v.v_cn, WithinAbs(100.0 + 100.0 * std::sin(pi / 2 - pi / 3), 1e-12));
}

TEST_CASE("zero amplitude pins every node to v_dc") {
  ReferenceConfig cfg;
  cfg.v_m = 0.0;
  for (double t : {0.0, 0.003, 0.0171}) {
    const auto v = phase_references(t, cfg);
    CHECK(v.v_bn == cfg.v_dc);
    CHECK(v.v_cn == cfg.v_dc);
    const auto l = line_voltages(t, cfg);
    CHECK(l.v_ab == 0.0);
  }
}

TEST_CASE("line voltages are balanced and equal phase differences", "[property]") {
  oracle::Gen gen(31);
  for (int i = 0; i < 2000; ++i) {
    ReferenceConfig cfg;
    cfg.v_dc = gen.uniform(10.0, 1000.0);
    cfg.v_m = gen.uniform(0.01, 1.0) * cfg.v_dc;
    cfg.freq = gen.uniform(1.0, 400.0);
    const double t = gen.uniform(0.0, 1.0);
    const auto p = phase_references(t, cfg);
    const auto l = line_voltages(t, cfg);
    const double tol = 1e-12 * std::max(cfg.v_m, 1e-2 * cfg.v_dc);
    CHECK(std::abs(l.v_ab + l.v_bc + l.v_ca) <= tol);
    CHECK(std::abs(l.v_ab - (p.v_an - p.v_bn)) <= tol);
    CHECK(std::abs(l.v_bc - (p.v_bn - p.v_cn)) <= tol);
    CHECK(std::abs(l.v_ca - (p.v_cn - p.v_an)) <= tol);
    // Nodes stay inside [v_dc - v_m, v_dc + v_m].
    CHECK(p.v_bn >= cfg.v_dc - cfg.v_m - tol);
    CHECK(p.v_cn <= cfg.v_dc + cfg.v_m + tol);
  }
}

TEST_CASE("references are periodic in 1/freq", "[property]") {
  oracle::Gen gen(32);
  for (int i = 0; i < 500; ++i) {
    ReferenceConfig cfg;
    cfg.freq = gen.uniform(10.0, 200.0);
    const double t = gen.uniform(0.0, 0.1);
    const auto a = phase_references(t, cfg);
    const auto b = phase_references(t + 3.0 / cfg.freq, cfg);
    CHECK_THAT(a.v_bn, WithinAbs(b.v_bn, 1e-8));
    CHECK_THAT(a.v_cn, WithinAbs(b.v_cn, 1e-8));
  }
}

TEST_CASE("electrical angle stays in [0, 2 pi)") {
  oracle::Gen gen(33);
  for (int i = 0; i < 1000; ++i) {
    const double a = electrical_angle(gen.uniform(0.0, 10.0), gen.uniform(1.0, 500.0));
    CHECK(a >= 0.0);
    CHECK(a < 2.0 * pi);
  }
}

TEST_CASE("load currents sum to zero and lag by phi") {
  ReferenceConfig cfg;
  cfg.phi_load = 0.4;
  oracle::Gen gen(34);
  for (int i = 0; i < 200; ++i) {
    const double t = gen.uniform(0.0, 0.1);
    const auto c = load_currents(t, cfg);
    CHECK(std::abs(c.i_a + c.i_b + c.i_c) < 1e-12);
  }
  ReferenceConfig r = cfg;
  r.phi_load = 0.0;
  const double dt = cfg.phi_load / (2 * pi * cfg.freq);
  CHECK_THAT(load_currents(0.004 + dt, cfg).i_a, WithinAbs(load_currents(0.004, r).i_a, 1e-12));
}

TEST_CASE("amplitude bound") {
  ReferenceConfig cfg;
  cfg.v_m = cfg.v_dc;
  CHECK(validate_amplitude(cfg).status == AmplitudeStatus::kOk);
  cfg.v_m = 150.0;
  const auto bad = validate_amplitude(cfg);
  CHECK(bad.status == AmplitudeStatus::kViolation);
  CHECK_FALSE(bad.ok());
  CHECK_THAT(bad.message, Catch::Matchers::ContainsSubstring("v_m <= v_dc"));
  cfg.v_m = -1.0;
  CHECK_FALSE(validate_amplitude(cfg).ok());
  cfg.v_m = 0.5;
  CHECK(validate_amplitude(cfg).status == AmplitudeStatus::kLowAmplitude);
  CHECK(validate_amplitude(cfg).ok());
}

TEST_CASE("reference structural validation") {
  ReferenceConfig cfg;
  cfg.freq = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = ReferenceConfig{};
  cfg.v_m = std::nan("");
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}
