#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "trisw/plant_model.hpp"

namespace trisw {

enum class PredictionScheme : std::uint8_t {
  // One candidate state held across the whole horizon: 8 trajectories per decision.
  kSimplified,
  // Every switching sequence over the horizon: 8^n_p trajectories.
  kFullEnumeration,
};

enum class TieBreak : std::uint8_t { kPreferPrevious, kLowestIndex };

std::string_view to_string(PredictionScheme s);
std::string_view to_string(TieBreak t);
PredictionScheme parse_prediction_scheme(std::string_view name);
TieBreak parse_tie_break(std::string_view name);

/// Largest horizon accepted by the full-enumeration scheme.
inline constexpr int kMaxFullEnumerationHorizon = 3;

/// Per-inductor quantities are ordered {x, 1, 2}.
struct MpcConfig {
  int n_p = 2;
  std::array<double, 3> lambda = {0.10, 0.10, 0.10};
  std::array<double, 3> beta = {0.5, 0.5, 0.5};
  std::array<double, 3> i_sat = {17.7, 14.7, 14.7};
  double t_s = 25e-6;
  PredictionScheme scheme = PredictionScheme::kSimplified;
  TieBreak tie_break = TieBreak::kPreferPrevious;
  // Penalize predicted inductor currents over the horizon instead of the
  // measured ones (the measured term is identical for every candidate).
  bool saturation_on_predicted = false;

  void validate() const;

  bool operator==(const MpcConfig&) const = default;
};

struct VoltageRef {
  double v_bn = 0.0;
  double v_cn = 0.0;
};

struct CostBreakdown {
  double tracking = 0.0;
  double saturation = 0.0;
  double total = 0.0;
};

struct ControlDecision {
  SwitchState chosen;
  CostBreakdown cost;
  std::array<double, kNumSwitchStates> candidate_costs{};
  // Number of horizon trajectories evaluated for this decision.
  std::int64_t horizon_evaluations = 0;
};

/// Relative tie tolerance: |c1 - c2| <= kTieTolerance * max(1, c_min).
inline constexpr double kTieTolerance = 1e-12;

StateVector predict_step(const DiscreteModel& model, const StateVector& x, const InputVector& u);

/// States at k+1..k+steps with s held and u constant.
std::vector<StateVector> predict_horizon(const ModelBank& bank, const StateVector& x,
                                         const InputVector& u, SwitchState s, int steps);

/// Throws ConfigError when predicted.size() != refs.size().
CostBreakdown evaluate_cost(std::span<const StateVector> predicted, std::span<const VoltageRef> refs,
                            const std::array<double, 3>& i_now, const MpcConfig& cfg);

/**
 * Evaluates all eight candidates and returns the cost-minimizing state.
 *
 * Under prefer-previous, prev is kept whenever its cost ties the minimum.
 * Otherwise (and under lowest-index) the lowest-index state with the exact
 * minimum cost wins. For full enumeration a candidate's cost is the best cost
 * over all continuations that start with it.
 */
ControlDecision select_switch_state(const StateVector& x, const InputVector& u,
                                    std::span<const VoltageRef> refs, const ModelBank& bank,
                                    const MpcConfig& cfg, SwitchState prev);

/// Picks the winning index from eight totals under a tie policy.
int pick_candidate(const std::array<double, kNumSwitchStates>& totals, TieBreak policy, int prev);

// Current transducer: i_L = 5.33 * v_il - 13.33.
inline constexpr double kTransducerGain = 5.33;
inline constexpr double kTransducerOffset = 13.33;

double current_from_transducer(double v_il);
double transducer_from_current(double i_l);

}  // namespace trisw
