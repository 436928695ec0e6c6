#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Core>

namespace trisw {

inline constexpr int kNumStates = 5;
inline constexpr int kNumInputs = 3;
inline constexpr int kNumSwitchStates = 8;

// State order: [v_bn, v_cn, i_lx, i_l1, i_l2].
using StateVector = Eigen::Matrix<double, kNumStates, 1>;
// Input order: [v_c1, v_c2, v_g].
using InputVector = Eigen::Matrix<double, kNumInputs, 1>;
using StateMatrix = Eigen::Matrix<double, kNumStates, kNumStates, Eigen::RowMajor>;
using InputMatrix = Eigen::Matrix<double, kNumStates, kNumInputs, Eigen::RowMajor>;

enum StateIndex : int { kVbn = 0, kVcn = 1, kIlx = 2, kIl1 = 3, kIl2 = 4 };
enum InputIndex : int { kVc1 = 0, kVc2 = 1, kVg = 2 };

/// Passive components, parasitics, load and supply. SI units throughout.
struct CircuitParams {
  double l_x = 3.6e-3;
  double l_1 = 1.2e-3;
  double l_2 = 1.2e-3;
  double c_1 = 30e-6;
  double c_2 = 30e-6;
  double c_3 = 1e-6;
  double c_4 = 1e-6;
  double r_lx = 0.1;
  double r_l1 = 0.1;
  double r_l2 = 0.1;
  double r_c3 = 0.05;
  double r_c4 = 0.05;
  double r_load = 50.0;
  double v_dc = 100.0;

  /// Throws ConfigError naming the first violated rule.
  void validate() const;

  bool operator==(const CircuitParams&) const = default;
};

/// The (q_x, q_1, q_2) switch commands. index() = 4*q_x + 2*q_1 + q_2.
struct SwitchState {
  bool q_x = false;
  bool q_1 = false;
  bool q_2 = false;

  constexpr int index() const { return (q_x ? 4 : 0) + (q_1 ? 2 : 0) + (q_2 ? 1 : 0); }

  static constexpr SwitchState from_index(int i) {
    return SwitchState{(i & 4) != 0, (i & 2) != 0, (i & 1) != 0};
  }

  bool operator==(const SwitchState&) const = default;
};

std::string to_string(SwitchState s);

enum class ModelVariant : std::uint8_t {
  // Literal transcription of the printed coefficient matrix, anomalies included.
  kAsPrinted,
  // Dissipative diagonals, mirrored v_cn coupling in the i_l2 row and
  // output-capacitor coupling gated by the same q_x(1 - q) factor as the
  // inductor drive, so that each mode moves v_bn/v_cn in its described direction.
  kModeConsistent,
};

std::string_view to_string(ModelVariant v);
/// Accepts "as-printed" and "mode-consistent"; throws ConfigError otherwise.
ModelVariant parse_model_variant(std::string_view name);

struct ContinuousModel {
  StateMatrix g = StateMatrix::Zero();
  InputMatrix h = InputMatrix::Zero();
  SwitchState switch_state;
};

struct DiscreteModel {
  StateMatrix phi = StateMatrix::Identity();
  InputMatrix gamma = InputMatrix::Zero();
  double t_s = 0.0;
  SwitchState switch_state;
};

/// Discrete models for all eight switch states at one sample time.
struct ModelBank {
  std::array<DiscreteModel, kNumSwitchStates> models;
  double t_s = 0.0;

  const DiscreteModel& operator[](SwitchState s) const { return models[s.index()]; }
  const DiscreteModel& operator[](int i) const { return models[i]; }
};

ContinuousModel assemble_continuous(const CircuitParams& params, SwitchState s,
                                    ModelVariant variant = ModelVariant::kModeConsistent);

/// G*x + H*u.
StateVector derivative(const ContinuousModel& model, const StateVector& x, const InputVector& u);

/**
 * Exact zero-order-hold discretization.
 *
 * Phi and Gamma are read from the exponential of the augmented matrix
 * [[G, H], [0, 0]] * t_s, so no inverse of G is needed (G is singular for
 * several switch states). Throws ConfigError when t_s <= 0.
 */
DiscreteModel zoh_discretize(const ContinuousModel& model, double t_s);

ModelBank build_model_bank(const CircuitParams& params, double t_s,
                           ModelVariant variant = ModelVariant::kModeConsistent);

/// Nominal inputs: both intermediate capacitors and the source at v_dc.
InputVector nominal_inputs(double v_dc);

enum class Sign : int { kNegative = -1, kZero = 0, kPositive = 1 };

/// Direction of (dv_bn/dt, dv_cn/dt) each mode is described to produce.
std::pair<Sign, Sign> mode_sign_expectations(SwitchState s);

struct ModeSignResult {
  SwitchState state;
  std::pair<Sign, Sign> expected;
  std::pair<Sign, Sign> observed;
  double dv_bn = 0.0;
  double dv_cn = 0.0;
  bool matches = false;
};

/// Operating point used by the mode-sign diagnostic.
struct ModeSignOperatingPoint {
  double v_node = 0.0;     // v_bn = v_cn
  double i_inductor = 0.0; // i_lx = i_l1 = i_l2
};

/**
 * Default diagnostic point: both nodes at v_dc and every inductor carrying
 * twice the load current at v_dc, i.e. a charging condition where inductor
 * current exceeds what the load draws.
 */
ModeSignOperatingPoint default_mode_sign_point(const CircuitParams& params);

/// Evaluates the sign of dv_bn/dt and dv_cn/dt for all eight states at the
/// operating point with nominal inputs.
std::array<ModeSignResult, kNumSwitchStates> mode_sign_check(const CircuitParams& params,
                                                             ModelVariant variant,
                                                             const ModeSignOperatingPoint& op);

}  // namespace trisw
