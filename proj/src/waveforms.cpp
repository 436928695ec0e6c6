#include "trisw/waveforms.hpp"

#include <cmath>
#include <sstream>

#include "trisw/errors.hpp"

namespace trisw {

using std::numbers::pi;

void ReferenceConfig::validate() const {
  if (!std::isfinite(v_m) || !std::isfinite(v_dc) || !std::isfinite(freq) ||
      !std::isfinite(phi_load) || !std::isfinite(i_m)) {
    throw ConfigError("reference: all values must be finite");
  }
  if (!(freq > 0.0)) throw ConfigError("reference: freq must be > 0");
  if (!(i_m >= 0.0)) throw ConfigError("reference: i_m must be >= 0");
  if (!(v_dc > 0.0)) throw ConfigError("reference: v_dc must be > 0");
}

double electrical_angle(double t, double freq) {
  const double cycles = freq * t;
  return 2.0 * pi * (cycles - std::floor(cycles));
}

PhaseVoltages phase_references_at(double angle, double v_m, double v_dc) {
  return {v_dc, v_dc + v_m * std::sin(angle), v_dc + v_m * std::sin(angle - pi / 3.0)};
}

PhaseVoltages phase_references(double t, const ReferenceConfig& cfg) {
  return phase_references_at(electrical_angle(t, cfg.freq), cfg.v_m, cfg.v_dc);
}

LineVoltages line_voltages(double t, const ReferenceConfig& cfg) {
  const double wt = electrical_angle(t, cfg.freq);
  return {cfg.v_m * std::sin(wt + pi), cfg.v_m * std::sin(wt + pi / 3.0),
          cfg.v_m * std::sin(wt - pi / 3.0)};
}

LoadCurrents load_currents(double t, const ReferenceConfig& cfg) {
  const double wt = electrical_angle(t, cfg.freq);
  const double phi = cfg.phi_load;
  return {cfg.i_m * std::sin(wt + 5.0 * pi / 6.0 - phi), cfg.i_m * std::sin(wt + pi / 6.0 - phi),
          cfg.i_m * std::sin(wt - pi / 2.0 - phi)};
}

AmplitudeCheck validate_amplitude(const ReferenceConfig& cfg) {
  std::ostringstream os;
  if (!(cfg.v_m >= 0.0) || !(cfg.v_m <= cfg.v_dc)) {
    os << "amplitude constraint 0 <= v_m <= v_dc violated: v_m=" << cfg.v_m
       << " V, v_dc=" << cfg.v_dc << " V";
    return {AmplitudeStatus::kViolation, os.str()};
  }
  if (cfg.v_m < kLowAmplitudeFraction * cfg.v_dc) {
    os << "v_m=" << cfg.v_m << " V is below " << kLowAmplitudeFraction * 100.0
       << "% of v_dc; practical operation needs an amplitude slightly above zero";
    return {AmplitudeStatus::kLowAmplitude, os.str()};
  }
  return {};
}

}  // namespace trisw
