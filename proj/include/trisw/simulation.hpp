#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "trisw/mpc.hpp"
#include "trisw/plant_model.hpp"
#include "trisw/waveforms.hpp"

namespace trisw {

/// Reference step applied atomically at `time`.
struct ReferenceEvent {
  double time = 0.0;
  double v_m = 0.0;
  double freq = 0.0;

  bool operator==(const ReferenceEvent&) const = default;
};

/// Optional sinusoidal ripple on the intermediate-capacitor inputs v_c1, v_c2.
struct InputRipple {
  double amplitude = 0.0;
  double freq = 0.0;

  bool operator==(const InputRipple&) const = default;
};

struct SimConfig {
  double duration = 0.2;
  int warmup_cycles = 1;
  // 1 = plant advanced by the same ZOH model the controller uses; > 1 =
  // continuous model integrated with this many RK4 steps per sample.
  int plant_substeps = 1;
  StateVector initial_state = StateVector::Zero();
  std::vector<ReferenceEvent> events;
  InputRipple ripple;

  void validate() const;

  bool operator==(const SimConfig&) const = default;
};

struct TraceRecord {
  double t = 0.0;
  SwitchState state;
  StateVector x = StateVector::Zero();
  double v_bn_ref = 0.0;
  double v_cn_ref = 0.0;
  double v_ab = 0.0;
  double v_bc = 0.0;
  double v_ca = 0.0;
  double cost = 0.0;
  // Reference settings in force at this sample.
  double v_m = 0.0;
  double freq = 0.0;
};

struct Trace {
  double t_s = 0.0;
  double v_dc = 0.0;
  std::vector<TraceRecord> records;
};

struct MetricsReport {
  double thd_v_ab = 0.0;
  double thd_v_bc = 0.0;
  double thd_v_ca = 0.0;
  double rms_error_v_bn = 0.0;
  double rms_error_v_cn = 0.0;
  double peak_ripple = 0.0;
  std::array<double, 3> fsw_per_switch{};
  std::optional<double> settle_time;

  double mean_thd() const { return (thd_v_ab + thd_v_bc + thd_v_ca) / 3.0; }
};

struct TrackingMetrics {
  double rms_error_v_bn = 0.0;
  double rms_error_v_cn = 0.0;
  double peak_ripple = 0.0;
};

/// floor(duration / t_s) + 1, guarding against representation error in the ratio.
std::size_t sample_count(double duration, double t_s);

/**
 * Closed-loop simulation: measure, choose a switch state, advance the plant
 * one sample, record.
 *
 * References advance by accumulated electrical angle so a frequency event
 * keeps the phase continuous. Throws ConstraintError if the amplitude bound
 * fails (initially or after an event) and NumericError carrying the
 * timestamp if the state stops being finite.
 */
Trace run_closed_loop(const CircuitParams& params, const MpcConfig& mpc,
                      const ReferenceConfig& ref_cfg, const SimConfig& sim,
                      ModelVariant variant = ModelVariant::kModeConsistent);

/// Toggle count per switch over twice the observed duration, in {q_x, q_1, q_2} order.
std::array<double, 3> switching_frequency(const Trace& trace);

/// RMS and peak of state minus reference after the warm-up window.
TrackingMetrics tracking_metrics(const Trace& trace, int warmup_cycles);

/// First sample time >= event_time from which both node errors stay within
/// `band` for a full fundamental period; nullopt when that never happens.
std::optional<double> settle_time(const Trace& trace, double event_time, double band);

/// Line-voltage THD over the last whole number of fundamental cycles after
/// warm-up, evaluated at the frequency in force at the end of the trace.
std::array<double, 3> line_thd(const Trace& trace, int warmup_cycles,
                               int max_harmonic = 50);

/// Full report; settle_time is filled for the first event when one exists.
MetricsReport compute_metrics(const Trace& trace, const SimConfig& sim,
                              double settle_band = 5.0);

struct SweepCell {
  int n_p = 0;
  double lambda = 0.0;
  bool ok = false;
  std::string error;
  MetricsReport metrics;
};

/**
 * One independent closed-loop run per (n_p, lambda) cell, with lambda applied
 * to all three inductors. Cells run concurrently and are returned in grid
 * order (n_p major). A failing cell is marked and does not abort the sweep.
 */
std::vector<SweepCell> sweep(const std::vector<int>& horizons, const std::vector<double>& lambdas,
                             const CircuitParams& params, const MpcConfig& base_mpc,
                             const ReferenceConfig& ref_cfg, const SimConfig& sim,
                             ModelVariant variant = ModelVariant::kModeConsistent);

}  // namespace trisw
