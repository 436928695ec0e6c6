#include "trisw/mpc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "trisw/errors.hpp"

namespace trisw {
namespace {

double saturation_term(const std::array<double, 3>& currents, const MpcConfig& cfg) {
  double s = 0.0;
  for (std::size_t p = 0; p < 3; ++p) {
    const double d = currents[p] - cfg.beta[p] * cfg.i_sat[p];
    s += cfg.lambda[p] * d * d;
  }
  return s;
}

std::array<double, 3> currents_of(const StateVector& x) {
  return {x(kIlx), x(kIl1), x(kIl2)};
}

// Depth-first walk over all switching sequences below a fixed prefix that
// led to `x`; returns the cheapest completion.
CostBreakdown best_continuation(const ModelBank& bank, const StateVector& x, const InputVector& u,
                                std::span<const VoltageRef> refs, const MpcConfig& cfg,
                                std::size_t depth, CostBreakdown so_far,
                                std::int64_t& evaluations) {
  if (depth == refs.size()) {
    ++evaluations;
    so_far.total = so_far.tracking + so_far.saturation;
    return so_far;
  }
  CostBreakdown best{0.0, 0.0, std::numeric_limits<double>::infinity()};
  for (int s = 0; s < kNumSwitchStates; ++s) {
    const StateVector next = predict_step(bank[s], x, u);
    const double eb = next(kVbn) - refs[depth].v_bn;
    const double ec = next(kVcn) - refs[depth].v_cn;
    CostBreakdown step = so_far;
    step.tracking += eb * eb + ec * ec;
    if (cfg.saturation_on_predicted) step.saturation += saturation_term(currents_of(next), cfg);
    const CostBreakdown c = best_continuation(bank, next, u, refs, cfg, depth + 1, step, evaluations);
    if (c.total < best.total) best = c;
  }
  return best;
}

}  // namespace

std::string_view to_string(PredictionScheme s) {
  return s == PredictionScheme::kSimplified ? "simplified" : "full-enumeration";
}

std::string_view to_string(TieBreak t) {
  return t == TieBreak::kPreferPrevious ? "prefer-previous" : "lowest-index";
}

PredictionScheme parse_prediction_scheme(std::string_view name) {
  if (name == "simplified") return PredictionScheme::kSimplified;
  if (name == "full-enumeration") return PredictionScheme::kFullEnumeration;
  throw ConfigError("mpc.prediction_scheme: expected 'simplified' or 'full-enumeration', got '" +
                    std::string(name) + "'");
}

TieBreak parse_tie_break(std::string_view name) {
  if (name == "prefer-previous") return TieBreak::kPreferPrevious;
  if (name == "lowest-index") return TieBreak::kLowestIndex;
  throw ConfigError("mpc.tie_break: expected 'prefer-previous' or 'lowest-index', got '" +
                    std::string(name) + "'");
}

void MpcConfig::validate() const {
  if (n_p < 1) throw ConfigError("mpc: n_p must be >= 1");
  for (std::size_t p = 0; p < 3; ++p) {
    if (!std::isfinite(lambda[p]) || lambda[p] < 0.0) {
      throw ConfigError("mpc: lambda must be finite and >= 0");
    }
    if (!(beta[p] > 0.0 && beta[p] <= 1.0)) throw ConfigError("mpc: beta must be in (0, 1]");
    if (!(i_sat[p] > 0.0) || !std::isfinite(i_sat[p])) {
      throw ConfigError("mpc: i_sat must be > 0");
    }
  }
  if (!(t_s > 0.0) || !std::isfinite(t_s)) throw ConfigError("mpc: t_s must be > 0");
  if (scheme == PredictionScheme::kFullEnumeration && n_p > kMaxFullEnumerationHorizon) {
    throw ConfigError("mpc: full-enumeration is limited to n_p <= " +
                      std::to_string(kMaxFullEnumerationHorizon));
  }
}

StateVector predict_step(const DiscreteModel& model, const StateVector& x, const InputVector& u) {
  return model.phi * x + model.gamma * u;
}

std::vector<StateVector> predict_horizon(const ModelBank& bank, const StateVector& x,
                                         const InputVector& u, SwitchState s, int steps) {
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(std::max(steps, 0)));
  const DiscreteModel& m = bank[s];
  StateVector z = x;
  for (int j = 0; j < steps; ++j) {
    z = predict_step(m, z, u);
    out.push_back(z);
  }
  return out;
}

CostBreakdown evaluate_cost(std::span<const StateVector> predicted, std::span<const VoltageRef> refs,
                            const std::array<double, 3>& i_now, const MpcConfig& cfg) {
  if (predicted.size() != refs.size()) {
    throw ConfigError("evaluate_cost: predicted and reference sequences differ in length (" +
                      std::to_string(predicted.size()) + " vs " + std::to_string(refs.size()) +
                      ")");
  }
  CostBreakdown c;
  for (std::size_t j = 0; j < predicted.size(); ++j) {
    const double eb = predicted[j](kVbn) - refs[j].v_bn;
    const double ec = predicted[j](kVcn) - refs[j].v_cn;
    c.tracking += eb * eb + ec * ec;
  }
  if (cfg.saturation_on_predicted) {
    for (const auto& z : predicted) c.saturation += saturation_term(currents_of(z), cfg);
  } else {
    c.saturation = saturation_term(i_now, cfg);
  }
  c.total = c.tracking + c.saturation;
  return c;
}

int pick_candidate(const std::array<double, kNumSwitchStates>& totals, TieBreak policy, int prev) {
  int best = 0;
  for (int i = 1; i < kNumSwitchStates; ++i) {
    if (totals[i] < totals[best]) best = i;
  }
  if (policy == TieBreak::kPreferPrevious && prev >= 0 && prev < kNumSwitchStates && prev != best) {
    const double c_min = totals[best];
    if (std::abs(totals[prev] - c_min) <= kTieTolerance * std::max(1.0, c_min)) return prev;
  }
  return best;
}

ControlDecision select_switch_state(const StateVector& x, const InputVector& u,
                                    std::span<const VoltageRef> refs, const ModelBank& bank,
                                    const MpcConfig& cfg, SwitchState prev) {
  ControlDecision d;
  const auto i_now = currents_of(x);
  std::array<CostBreakdown, kNumSwitchStates> costs{};

  if (cfg.scheme == PredictionScheme::kSimplified) {
    for (int s = 0; s < kNumSwitchStates; ++s) {
      const auto traj = predict_horizon(bank, x, u, SwitchState::from_index(s),
                                        static_cast<int>(refs.size()));
      costs[s] = evaluate_cost(traj, refs, i_now, cfg);
      d.candidate_costs[s] = costs[s].total;
      ++d.horizon_evaluations;
    }
  } else {
    if (refs.empty()) throw ConfigError("select_switch_state: empty reference horizon");
    CostBreakdown base;
    if (!cfg.saturation_on_predicted) base.saturation = saturation_term(i_now, cfg);
    for (int s = 0; s < kNumSwitchStates; ++s) {
      const StateVector next = predict_step(bank[s], x, u);
      const double eb = next(kVbn) - refs[0].v_bn;
      const double ec = next(kVcn) - refs[0].v_cn;
      CostBreakdown first = base;
      first.tracking = eb * eb + ec * ec;
      if (cfg.saturation_on_predicted) first.saturation += saturation_term(currents_of(next), cfg);
      costs[s] = best_continuation(bank, next, u, refs, cfg, 1, first, d.horizon_evaluations);
      d.candidate_costs[s] = costs[s].total;
    }
  }

  const int chosen = pick_candidate(d.candidate_costs, cfg.tie_break, prev.index());
  d.chosen = SwitchState::from_index(chosen);
  d.cost = costs[chosen];
  return d;
}

double current_from_transducer(double v_il) { return kTransducerGain * v_il - kTransducerOffset; }

double transducer_from_current(double i_l) { return (i_l + kTransducerOffset) / kTransducerGain; }

}  // namespace trisw
