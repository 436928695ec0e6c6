#include "trisw/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <numbers>
#include <sstream>
#include <thread>

#include "trisw/errors.hpp"
#include "trisw/harmonics.hpp"

namespace trisw {
namespace {

using std::numbers::pi;

// Relative slack for comparing times that sit on the sample grid.
constexpr double kGridSlack = 1e-9;

StateVector rk4_step(const ContinuousModel& m, const StateVector& x, const InputVector& u,
                     double h) {
  const StateVector k1 = derivative(m, x, u);
  const StateVector k2 = derivative(m, x + 0.5 * h * k1, u);
  const StateVector k3 = derivative(m, x + 0.5 * h * k2, u);
  const StateVector k4 = derivative(m, x + h * k3, u);
  return x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

std::size_t index_at_or_after(const Trace& trace, double t) {
  const auto it = std::lower_bound(
      trace.records.begin(), trace.records.end(), t - kGridSlack * trace.t_s,
      [](const TraceRecord& r, double v) { return r.t < v; });
  return static_cast<std::size_t>(it - trace.records.begin());
}

}  // namespace

void SimConfig::validate() const {
  if (!(duration > 0.0) || !std::isfinite(duration)) throw ConfigError("sim: duration must be > 0");
  if (warmup_cycles < 0) throw ConfigError("sim: warmup_cycles must be >= 0");
  if (plant_substeps < 1) throw ConfigError("sim: plant_substeps must be >= 1");
  if (!initial_state.allFinite()) throw ConfigError("sim: initial_state must be finite");
  double last = -1.0;
  for (const auto& e : events) {
    if (!std::isfinite(e.time) || e.time < 0.0 || e.time >= duration) {
      throw ConfigError("sim: event times must lie in [0, duration)");
    }
    if (e.time <= last) throw ConfigError("sim: event times must be strictly increasing");
    if (!(e.freq > 0.0) || !std::isfinite(e.v_m)) {
      throw ConfigError("sim: event needs finite v_m and freq > 0");
    }
    last = e.time;
  }
  if (!(ripple.amplitude >= 0.0) || !(ripple.freq >= 0.0)) {
    throw ConfigError("sim: ripple amplitude and freq must be >= 0");
  }
}

std::size_t sample_count(double duration, double t_s) {
  return static_cast<std::size_t>(std::floor(duration / t_s + kGridSlack)) + 1;
}

Trace run_closed_loop(const CircuitParams& params, const MpcConfig& mpc,
                      const ReferenceConfig& ref_cfg, const SimConfig& sim, ModelVariant variant) {
  params.validate();
  mpc.validate();
  ref_cfg.validate();
  sim.validate();
  if (ref_cfg.v_dc != params.v_dc) {
    throw ConfigError("reference.v_dc must equal circuit.v_dc");
  }
  if (const auto check = validate_amplitude(ref_cfg); !check.ok()) {
    throw ConstraintError(check.message);
  }

  const double t_s = mpc.t_s;
  const ModelBank bank = build_model_bank(params, t_s, variant);
  std::array<ContinuousModel, kNumSwitchStates> continuous;
  if (sim.plant_substeps > 1) {
    for (int i = 0; i < kNumSwitchStates; ++i) {
      continuous[i] = assemble_continuous(params, SwitchState::from_index(i), variant);
    }
  }

  Trace trace;
  trace.t_s = t_s;
  trace.v_dc = params.v_dc;
  const std::size_t n = sample_count(sim.duration, t_s);
  trace.records.reserve(n);

  ReferenceConfig ref = ref_cfg;
  std::size_t next_event = 0;
  double angle = 0.0;
  StateVector x = sim.initial_state;
  SwitchState prev{};
  std::vector<VoltageRef> horizon(static_cast<std::size_t>(mpc.n_p));

  for (std::size_t k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) * t_s;
    while (next_event < sim.events.size() &&
           sim.events[next_event].time <= t + kGridSlack * t_s) {
      ref.v_m = sim.events[next_event].v_m;
      ref.freq = sim.events[next_event].freq;
      if (const auto check = validate_amplitude(ref); !check.ok()) {
        throw ConstraintError(check.message);
      }
      ++next_event;
    }

    const double omega_ts = 2.0 * pi * ref.freq * t_s;
    for (int j = 1; j <= mpc.n_p; ++j) {
      const auto r = phase_references_at(angle + j * omega_ts, ref.v_m, ref.v_dc);
      horizon[static_cast<std::size_t>(j - 1)] = {r.v_bn, r.v_cn};
    }

    InputVector u = nominal_inputs(params.v_dc);
    if (sim.ripple.amplitude > 0.0) {
      const double ripple = sim.ripple.amplitude * std::sin(2.0 * pi * sim.ripple.freq * t);
      u(kVc1) += ripple;
      u(kVc2) += ripple;
    }

    const ControlDecision d = select_switch_state(x, u, horizon, bank, mpc, prev);
    const auto now = phase_references_at(angle, ref.v_m, ref.v_dc);

    TraceRecord rec;
    rec.t = t;
    rec.state = d.chosen;
    rec.x = x;
    rec.v_bn_ref = now.v_bn;
    rec.v_cn_ref = now.v_cn;
    rec.v_ab = params.v_dc - x(kVbn);
    rec.v_bc = x(kVbn) - x(kVcn);
    rec.v_ca = x(kVcn) - params.v_dc;
    rec.cost = d.cost.total;
    rec.v_m = ref.v_m;
    rec.freq = ref.freq;
    trace.records.push_back(rec);

    if (k + 1 == n) break;

    if (sim.plant_substeps == 1) {
      x = predict_step(bank[d.chosen], x, u);
    } else {
      const double h = t_s / sim.plant_substeps;
      const ContinuousModel& m = continuous[d.chosen.index()];
      for (int i = 0; i < sim.plant_substeps; ++i) x = rk4_step(m, x, u, h);
    }
    if (!x.allFinite()) {
      std::ostringstream os;
      os << "closed loop diverged: non-finite state at t=" << t + t_s << " s";
      throw NumericError(os.str());
    }
    prev = d.chosen;
    angle = std::fmod(angle + omega_ts, 2.0 * pi);
  }
  return trace;
}

std::array<double, 3> switching_frequency(const Trace& trace) {
  std::array<double, 3> f{};
  const auto& r = trace.records;
  if (r.size() < 2) return f;
  std::array<std::size_t, 3> toggles{};
  for (std::size_t k = 1; k < r.size(); ++k) {
    toggles[0] += r[k].state.q_x != r[k - 1].state.q_x;
    toggles[1] += r[k].state.q_1 != r[k - 1].state.q_1;
    toggles[2] += r[k].state.q_2 != r[k - 1].state.q_2;
  }
  const double observed = r.back().t - r.front().t;
  for (std::size_t i = 0; i < 3; ++i) f[i] = static_cast<double>(toggles[i]) / (2.0 * observed);
  return f;
}

TrackingMetrics tracking_metrics(const Trace& trace, int warmup_cycles) {
  if (trace.records.empty()) throw ConfigError("tracking_metrics: empty trace");
  const double warmup = warmup_cycles / trace.records.front().freq;
  const std::size_t start = index_at_or_after(trace, trace.records.front().t + warmup);
  if (start >= trace.records.size()) {
    throw ConfigError("tracking_metrics: trace is not longer than the warm-up window");
  }
  TrackingMetrics m;
  double sb = 0.0;
  double sc = 0.0;
  for (std::size_t k = start; k < trace.records.size(); ++k) {
    const auto& r = trace.records[k];
    const double eb = r.x(kVbn) - r.v_bn_ref;
    const double ec = r.x(kVcn) - r.v_cn_ref;
    sb += eb * eb;
    sc += ec * ec;
    m.peak_ripple = std::max({m.peak_ripple, std::abs(eb), std::abs(ec)});
  }
  const double count = static_cast<double>(trace.records.size() - start);
  m.rms_error_v_bn = std::sqrt(sb / count);
  m.rms_error_v_cn = std::sqrt(sc / count);
  return m;
}

std::optional<double> settle_time(const Trace& trace, double event_time, double band) {
  const auto& r = trace.records;
  const std::size_t n = r.size();
  std::vector<bool> bad(n);
  for (std::size_t k = 0; k < n; ++k) {
    bad[k] = std::abs(r[k].x(kVbn) - r[k].v_bn_ref) > band ||
             std::abs(r[k].x(kVcn) - r[k].v_cn_ref) > band;
  }
  // next_bad[k] = first index >= k that is out of band (n if none).
  std::vector<std::size_t> next_bad(n + 1, n);
  for (std::size_t k = n; k-- > 0;) next_bad[k] = bad[k] ? k : next_bad[k + 1];

  for (std::size_t k = index_at_or_after(trace, event_time); k < n; ++k) {
    const auto span = static_cast<std::size_t>(std::llround(1.0 / (r[k].freq * trace.t_s)));
    const std::size_t end = k + span;
    if (end >= n) break;
    if (next_bad[k] > end) return r[k].t;
  }
  return std::nullopt;
}

std::array<double, 3> line_thd(const Trace& trace, int warmup_cycles, int max_harmonic) {
  const auto& r = trace.records;
  if (r.empty()) throw ConfigError("line_thd: empty trace");
  const double f0 = r.back().freq;
  std::size_t start = index_at_or_after(trace, r.front().t + warmup_cycles / r.front().freq);
  // The window must not reach back before the last reference change.
  for (std::size_t k = r.size(); k-- > 1;) {
    if (r[k].freq != r[k - 1].freq || r[k].v_m != r[k - 1].v_m) {
      start = std::max(start, k);
      break;
    }
  }
  if (start >= r.size()) throw ConfigError("line_thd: no samples after warm-up");

  const double per_cycle = 1.0 / (f0 * trace.t_s);
  const auto available = r.size() - start;
  std::size_t length = 0;
  for (auto cycles = static_cast<std::size_t>(std::floor(available / per_cycle + kGridSlack));
       cycles >= 1; --cycles) {
    const double exact = cycles * per_cycle;
    if (std::abs(exact - std::round(exact)) <= 1e-6 * exact) {
      length = static_cast<std::size_t>(std::llround(exact));
      break;
    }
  }
  if (length == 0 || length > available) {
    throw ConfigError("line_thd: no whole number of fundamental cycles fits after warm-up");
  }

  std::array<std::vector<double>, 3> lines;
  for (auto& l : lines) l.reserve(length);
  for (std::size_t k = r.size() - length; k < r.size(); ++k) {
    lines[0].push_back(r[k].v_ab);
    lines[1].push_back(r[k].v_bc);
    lines[2].push_back(r[k].v_ca);
  }
  const double fs = 1.0 / trace.t_s;
  return {thd(lines[0], f0, fs, max_harmonic), thd(lines[1], f0, fs, max_harmonic),
          thd(lines[2], f0, fs, max_harmonic)};
}

MetricsReport compute_metrics(const Trace& trace, const SimConfig& sim, double settle_band) {
  MetricsReport m;
  const auto thds = line_thd(trace, sim.warmup_cycles);
  m.thd_v_ab = thds[0];
  m.thd_v_bc = thds[1];
  m.thd_v_ca = thds[2];
  const auto tm = tracking_metrics(trace, sim.warmup_cycles);
  m.rms_error_v_bn = tm.rms_error_v_bn;
  m.rms_error_v_cn = tm.rms_error_v_cn;
  m.peak_ripple = tm.peak_ripple;
  m.fsw_per_switch = switching_frequency(trace);
  if (!sim.events.empty()) m.settle_time = settle_time(trace, sim.events.front().time, settle_band);
  return m;
}

std::vector<SweepCell> sweep(const std::vector<int>& horizons, const std::vector<double>& lambdas,
                             const CircuitParams& params, const MpcConfig& base_mpc,
                             const ReferenceConfig& ref_cfg, const SimConfig& sim,
                             ModelVariant variant) {
  if (horizons.empty() || lambdas.empty()) throw ConfigError("sweep: grid must be non-empty");

  std::vector<SweepCell> cells;
  cells.reserve(horizons.size() * lambdas.size());
  for (const int n_p : horizons) {
    for (const double lambda : lambdas) cells.push_back(SweepCell{n_p, lambda, false, {}, {}});
  }

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      SweepCell& cell = cells[i];
      try {
        MpcConfig mpc = base_mpc;
        mpc.n_p = cell.n_p;
        mpc.lambda = {cell.lambda, cell.lambda, cell.lambda};
        const Trace trace = run_closed_loop(params, mpc, ref_cfg, sim, variant);
        cell.metrics = compute_metrics(trace, sim);
        cell.ok = true;
      } catch (const std::exception& e) {
        cell.error = e.what();
      }
    }
  };
  const std::size_t n_workers =
      std::min<std::size_t>(cells.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return cells;
}

}  // namespace trisw
