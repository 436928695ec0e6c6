#pragma once

#include <array>
#include <string>
#include <vector>

namespace trisw {

struct DesignInputs {
  double v_dc = 100.0;
  double v_m = 100.0;
  double i_m = 2.0;       // peak phase current
  double i_in_max = 4.0;  // maximum input current
  double t_s = 25e-6;
  double phi_load = 0.0;  // design range 0..pi/2

  void validate() const;
};

/// Allowed ripple, each as a fraction of its reference quantity.
struct RippleTargets {
  double coupling_cap_voltage = 0.05;     // of v_dc
  double output_inductor_current = 0.30;  // of i_m
  double output_cap_voltage = 0.10;       // of v_dc + v_m
  double input_inductor_current = 0.10;   // of i_in_max

  void validate() const;
};

struct DesignReport {
  double d_max_b = 0.0;
  double d_max_c = 0.0;
  double f_sw_max = 0.0;
  double f_sw_min = 0.0;
  double c_coup_1 = 0.0;  // sized with d_max_c
  double c_coup_2 = 0.0;  // sized with d_max_b
  double c_out_3 = 0.0;
  double c_out_4 = 0.0;
  double l_1 = 0.0;       // sized with d_max_b
  double l_2 = 0.0;       // sized with d_max_c
  double l_x = 0.0;       // sized with the larger duty
  RippleTargets ripple;
};

enum class Phase { kB, kC };

/// Minimum switching frequency as a fraction of the maximum.
inline constexpr double kMinSwitchingFraction = 0.2;

/// D(t) = V_out / (V_in + V_out) for the dc-biased phase-B or phase-C output.
double instantaneous_duty(double t, Phase phase, const DesignInputs& in, double freq);

struct MaxDuty {
  double b = 0.0;
  double c = 0.0;
};

/// Worst-case duty ratios: phase C peaks at sin = 0.866 under a resistive load,
/// phase B at sin = 1.
MaxDuty max_duty(const DesignInputs& in);

/// f_sw,max = 1 / (2 t_s).
double max_switching_frequency(double t_s);

DesignReport size_components(const DesignInputs& in, const RippleTargets& ripple = {});

struct TopologyRow {
  std::string name;
  int switches = 0;
  double tvrs = 0.0;             // total voltage rating of the switches, V
  double utilization_gain = 0.0; // dc utilization of the three-switch inverter relative to this row
};

/// Six-switch, four-switch and three-switch rows for a given peak line voltage.
std::vector<TopologyRow> comparison_report(double v_m);

}  // namespace trisw
