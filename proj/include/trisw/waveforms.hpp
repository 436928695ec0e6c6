#pragma once

#include <numbers>
#include <string>

namespace trisw {

/// Reference settings. Angles in radians, omega = 2*pi*freq.
struct ReferenceConfig {
  double v_m = 100.0;      // peak line-to-line output voltage
  double v_dc = 100.0;     // dc source voltage (phase A is tied to it)
  double freq = 50.0;      // fundamental frequency
  double phi_load = 0.0;   // load power-factor angle
  double i_m = 2.0;        // peak load current

  /// Structural checks only (freq > 0, i_m >= 0, finiteness); the
  /// amplitude bound is reported separately by validate_amplitude.
  void validate() const;

  bool operator==(const ReferenceConfig&) const = default;
};

struct PhaseVoltages {
  double v_an = 0.0;
  double v_bn = 0.0;
  double v_cn = 0.0;
};

struct LineVoltages {
  double v_ab = 0.0;
  double v_bc = 0.0;
  double v_ca = 0.0;
};

struct LoadCurrents {
  double i_a = 0.0;
  double i_b = 0.0;
  double i_c = 0.0;
};

/// omega*t reduced to [0, 2*pi).
double electrical_angle(double t, double freq);

/// dc-biased references from an electrical angle; v_cn lags v_bn by 60 degrees.
PhaseVoltages phase_references_at(double angle, double v_m, double v_dc);

PhaseVoltages phase_references(double t, const ReferenceConfig& cfg);
LineVoltages line_voltages(double t, const ReferenceConfig& cfg);
LoadCurrents load_currents(double t, const ReferenceConfig& cfg);

enum class AmplitudeStatus { kOk, kLowAmplitude, kViolation };

struct AmplitudeCheck {
  AmplitudeStatus status = AmplitudeStatus::kOk;
  std::string message;

  bool ok() const { return status != AmplitudeStatus::kViolation; }
};

/// Fraction of v_dc below which a non-zero amplitude is flagged as impractically low.
inline constexpr double kLowAmplitudeFraction = 0.01;

AmplitudeCheck validate_amplitude(const ReferenceConfig& cfg);

}  // namespace trisw
