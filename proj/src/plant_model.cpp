#include "trisw/plant_model.hpp"

#include <cmath>
#include <sstream>

#include "trisw/errors.hpp"
#include "trisw/matrix_exp.hpp"

namespace trisw {
namespace {

void require(bool ok, const char* rule) {
  if (!ok) throw ConfigError(std::string("circuit: ") + rule);
}

Sign sign_of(double v) {
  if (v > 0.0) return Sign::kPositive;
  if (v < 0.0) return Sign::kNegative;
  return Sign::kZero;
}

// Rows 1 and 2 of H are always zero; the inductor rows see the source only
// while q_x is on and the corresponding output switch is off.
InputMatrix assemble_h(const CircuitParams& p, double qx, double q1, double q2) {
  InputMatrix h = InputMatrix::Zero();
  h(kIlx, kVg) = qx / p.l_x;
  h(kIl1, kVc1) = qx * (1.0 - q2) / p.l_1;
  h(kIl1, kVg) = qx * (1.0 - q2) / p.l_1;
  h(kIl2, kVc2) = qx * (1.0 - q1) / p.l_2;
  h(kIl2, kVg) = qx * (1.0 - q1) / p.l_2;
  return h;
}

StateMatrix assemble_g_as_printed(const CircuitParams& p, double qx, double q1, double q2) {
  const double R = p.r_load;
  const double den4 = p.c_4 * (p.r_c4 + R);
  const double den3 = p.c_3 * (p.r_c3 + R);
  StateMatrix g = StateMatrix::Zero();

  g(kVbn, kVbn) = 1.0 / den4;
  g(kVbn, kIl1) = R / den4 * (1.0 - 2.0 * q2);

  g(kVcn, kVcn) = -1.0 / den3;
  g(kVcn, kIl2) = R / den3 * (1.0 - 2.0 * q1);

  // The bare (1 - q_x) is kept as printed even though it has no units.
  g(kIlx, kIlx) = -p.r_lx * qx / p.l_x + (1.0 - qx);

  g(kIl1, kVbn) = -R / (p.l_1 * (p.r_c4 + R));
  g(kIl1, kIl1) = p.r_c4 * R * (2.0 * q2 - 1.0) / (p.l_1 * den4) +
                  (p.r_l1 * p.r_c4 + p.r_l1 * R) * (1.0 + 2.0 * qx * q2 - 2.0 * qx - 2.0 * q2) /
                      (p.l_1 * den4);

  // No v_cn coupling in this row; the "Q_3" of the printed entry is read as q_x.
  g(kIl2, kIl2) = (p.r_l2 * p.r_c3 + p.r_l2 * R) * (1.0 + 2.0 * qx * q1 - 2.0 * qx - 2.0 * q1) /
                      (p.l_2 * den3) +
                  p.r_c3 * R * (2.0 * q1 - 1.0) / (p.l_2 * den3);
  return g;
}

StateMatrix assemble_g_mode_consistent(const CircuitParams& p, double qx, double q1, double q2) {
  const double R = p.r_load;
  const double den4 = p.c_4 * (p.r_c4 + R);
  const double den3 = p.c_3 * (p.r_c3 + R);
  const double rc4_par = p.r_c4 * R / (p.r_c4 + R);
  const double rc3_par = p.r_c3 * R / (p.r_c3 + R);
  StateMatrix g = StateMatrix::Zero();

  g(kVbn, kVbn) = -1.0 / den4;
  g(kVbn, kIl1) = R / den4 * qx * (1.0 - q2);

  g(kVcn, kVcn) = -1.0 / den3;
  g(kVcn, kIl2) = R / den3 * qx * (1.0 - q1);

  g(kIlx, kIlx) = -(p.r_lx + (1.0 - qx) * R) / p.l_x;

  g(kIl1, kVbn) = -R / (p.l_1 * (p.r_c4 + R));
  g(kIl1, kIl1) = -(p.r_l1 + rc4_par) / p.l_1;

  g(kIl2, kVcn) = -R / (p.l_2 * (p.r_c3 + R));
  g(kIl2, kIl2) = -(p.r_l2 + rc3_par) / p.l_2;
  return g;
}

}  // namespace

void CircuitParams::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  require(finite(l_x) && finite(l_1) && finite(l_2) && finite(c_1) && finite(c_2) &&
              finite(c_3) && finite(c_4) && finite(r_lx) && finite(r_l1) && finite(r_l2) &&
              finite(r_c3) && finite(r_c4) && finite(r_load) && finite(v_dc),
          "all values must be finite");
  require(l_x > 0 && l_1 > 0 && l_2 > 0, "inductances must be > 0");
  require(c_1 > 0 && c_2 > 0 && c_3 > 0 && c_4 > 0, "capacitances must be > 0");
  require(r_load > 0, "r_load must be > 0");
  require(v_dc > 0, "v_dc must be > 0");
  require(r_lx >= 0 && r_l1 >= 0 && r_l2 >= 0 && r_c3 >= 0 && r_c4 >= 0,
          "parasitic resistances must be >= 0");
}

std::string to_string(SwitchState s) {
  std::ostringstream os;
  os << '(' << int(s.q_x) << ',' << int(s.q_1) << ',' << int(s.q_2) << ')';
  return os.str();
}

std::string_view to_string(ModelVariant v) {
  return v == ModelVariant::kAsPrinted ? "as-printed" : "mode-consistent";
}

ModelVariant parse_model_variant(std::string_view name) {
  if (name == "as-printed") return ModelVariant::kAsPrinted;
  if (name == "mode-consistent") return ModelVariant::kModeConsistent;
  throw ConfigError("model_variant: expected 'as-printed' or 'mode-consistent', got '" +
                    std::string(name) + "'");
}

ContinuousModel assemble_continuous(const CircuitParams& params, SwitchState s,
                                    ModelVariant variant) {
  const double qx = s.q_x ? 1.0 : 0.0;
  const double q1 = s.q_1 ? 1.0 : 0.0;
  const double q2 = s.q_2 ? 1.0 : 0.0;
  ContinuousModel m;
  m.switch_state = s;
  m.g = variant == ModelVariant::kAsPrinted ? assemble_g_as_printed(params, qx, q1, q2)
                                            : assemble_g_mode_consistent(params, qx, q1, q2);
  m.h = assemble_h(params, qx, q1, q2);
  return m;
}

StateVector derivative(const ContinuousModel& model, const StateVector& x, const InputVector& u) {
  return model.g * x + model.h * u;
}

DiscreteModel zoh_discretize(const ContinuousModel& model, double t_s) {
  if (!(t_s > 0.0) || !std::isfinite(t_s)) {
    throw ConfigError("zoh_discretize: t_s must be > 0");
  }
  constexpr int n = kNumStates + kNumInputs;
  Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n, n);
  aug.topLeftCorner<kNumStates, kNumStates>() = model.g * t_s;
  aug.topRightCorner<kNumStates, kNumInputs>() = model.h * t_s;
  const Eigen::MatrixXd e = matrix_exponential(aug);

  DiscreteModel d;
  d.phi = e.topLeftCorner<kNumStates, kNumStates>();
  d.gamma = e.topRightCorner<kNumStates, kNumInputs>();
  d.t_s = t_s;
  d.switch_state = model.switch_state;
  return d;
}

ModelBank build_model_bank(const CircuitParams& params, double t_s, ModelVariant variant) {
  ModelBank bank;
  bank.t_s = t_s;
  for (int i = 0; i < kNumSwitchStates; ++i) {
    bank.models[i] = zoh_discretize(assemble_continuous(params, SwitchState::from_index(i), variant), t_s);
  }
  return bank;
}

InputVector nominal_inputs(double v_dc) { return InputVector::Constant(v_dc); }

std::pair<Sign, Sign> mode_sign_expectations(SwitchState s) {
  constexpr auto P = Sign::kPositive;
  constexpr auto N = Sign::kNegative;
  if (!s.q_x) return {N, N};
  if (!s.q_1 && !s.q_2) return {P, P};
  if (s.q_1 && !s.q_2) return {P, N};
  if (!s.q_1 && s.q_2) return {N, P};
  return {N, N};
}

ModeSignOperatingPoint default_mode_sign_point(const CircuitParams& params) {
  return {params.v_dc, 2.0 * params.v_dc / params.r_load};
}

std::array<ModeSignResult, kNumSwitchStates> mode_sign_check(const CircuitParams& params,
                                                             ModelVariant variant,
                                                             const ModeSignOperatingPoint& op) {
  StateVector x;
  x << op.v_node, op.v_node, op.i_inductor, op.i_inductor, op.i_inductor;
  const InputVector u = nominal_inputs(params.v_dc);

  std::array<ModeSignResult, kNumSwitchStates> out;
  for (int i = 0; i < kNumSwitchStates; ++i) {
    const SwitchState s = SwitchState::from_index(i);
    const StateVector dx = derivative(assemble_continuous(params, s, variant), x, u);
    ModeSignResult& r = out[i];
    r.state = s;
    r.expected = mode_sign_expectations(s);
    r.dv_bn = dx(kVbn);
    r.dv_cn = dx(kVcn);
    r.observed = {sign_of(r.dv_bn), sign_of(r.dv_cn)};
    r.matches = r.observed == r.expected;
  }
  return out;
}

}  // namespace trisw
