#include "trisw/design.hpp"

#include <cmath>
#include <numbers>

#include "trisw/errors.hpp"

namespace trisw {

using std::numbers::pi;

void DesignInputs::validate() const {
  if (!(v_dc > 0.0) || !(v_m > 0.0) || !(i_m > 0.0) || !(i_in_max > 0.0) || !(t_s > 0.0)) {
    throw ConfigError("design: v_dc, v_m, i_m, i_in_max and t_s must be > 0");
  }
  if (!(phi_load >= 0.0 && phi_load <= pi / 2.0)) {
    throw ConfigError("design: phi_load must lie in [0, pi/2]");
  }
}

void RippleTargets::validate() const {
  if (!(coupling_cap_voltage > 0.0) || !(output_inductor_current > 0.0) ||
      !(output_cap_voltage > 0.0) || !(input_inductor_current > 0.0)) {
    throw ConfigError("design: ripple fractions must be > 0");
  }
}

double instantaneous_duty(double t, Phase phase, const DesignInputs& in, double freq) {
  const double wt = 2.0 * pi * freq * t;
  const double s = phase == Phase::kB ? std::sin(wt) : std::sin(wt - pi / 3.0);
  const double v_out = in.v_dc + in.v_m * s;
  return v_out / (in.v_dc + v_out);
}

MaxDuty max_duty(const DesignInputs& in) {
  return {(in.v_dc + in.v_m) / (2.0 * in.v_dc + in.v_m),
          (in.v_dc + 0.866 * in.v_m) / (2.0 * in.v_dc + 0.866 * in.v_m)};
}

double max_switching_frequency(double t_s) { return 1.0 / (2.0 * t_s); }

DesignReport size_components(const DesignInputs& in, const RippleTargets& ripple) {
  in.validate();
  ripple.validate();
  DesignReport r;
  r.ripple = ripple;
  const MaxDuty d = max_duty(in);
  r.d_max_b = d.b;
  r.d_max_c = d.c;
  r.f_sw_max = max_switching_frequency(in.t_s);
  r.f_sw_min = kMinSwitchingFraction * r.f_sw_max;
  const double f = r.f_sw_min;

  const double dv_coup = ripple.coupling_cap_voltage * in.v_dc;
  r.c_coup_1 = d.c * in.i_m / (dv_coup * f);
  r.c_coup_2 = d.b * in.i_m / (dv_coup * f);

  // dV = di / (8 C f) with di the output-inductor ripple.
  const double di_out = ripple.output_inductor_current * in.i_m;
  const double dv_out = ripple.output_cap_voltage * (in.v_dc + in.v_m);
  r.c_out_3 = di_out / (8.0 * dv_out * f);
  r.c_out_4 = r.c_out_3;

  r.l_1 = in.v_dc * d.b / (di_out * f);
  r.l_2 = in.v_dc * d.c / (di_out * f);

  const double di_in = ripple.input_inductor_current * in.i_in_max;
  r.l_x = in.v_dc * std::max(d.b, d.c) / (di_in * f);
  return r;
}

std::vector<TopologyRow> comparison_report(double v_m) {
  if (!(v_m > 0.0)) throw ConfigError("compare: v_m must be > 0");
  const double sqrt3 = std::sqrt(3.0);
  return {
      {"six-switch", 6, 12.0 / sqrt3 * v_m, 2.0 / sqrt3},
      {"four-switch", 4, 8.0 * v_m, 2.0},
      {"three-switch", 3, 7.0 * v_m, 1.0},
  };
}

}  // namespace trisw
