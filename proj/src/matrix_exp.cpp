#include "trisw/matrix_exp.hpp"

#include <array>
#include <cmath>
#include <span>

#include <Eigen/LU>

#include "trisw/errors.hpp"

namespace trisw {
namespace {

using Eigen::MatrixXd;

// Padé numerator coefficients b_0..b_m for degrees 3, 5, 7, 9 and 13.
constexpr std::array<double, 4> kPade3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kPade5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kPade7 = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                                          25200.0,    1512.0,    56.0,      1.0};
constexpr std::array<double, 10> kPade9 = {17643225600.0, 8821612800.0, 2075673600.0,
                                           302702400.0,   30270240.0,   2162160.0,
                                           110880.0,      3960.0,       90.0,
                                           1.0};
constexpr std::array<double, 14> kPade13 = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
    129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
    1323241920.0,        40840800.0,          960960.0,           16380.0,
    182.0,               1.0};

// Largest 1-norm for which degree m keeps backward error below 2^-53.
constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double one_norm(const MatrixXd& a) { return a.cwiseAbs().colwise().sum().maxCoeff(); }

MatrixXd solve_pade(const MatrixXd& u, const MatrixXd& v) {
  const Eigen::PartialPivLU<MatrixXd> lu(v - u);
  const MatrixXd r = lu.solve(v + u);
  if (!r.allFinite()) {
    throw NumericError("matrix_exponential: singular Padé denominator");
  }
  return r;
}

// Degrees 3..9: U = A * sum(b_odd A^2k), V = sum(b_even A^2k).
MatrixXd pade_low(const MatrixXd& a, std::span<const double> b) {
  const auto n = a.rows();
  const MatrixXd ident = MatrixXd::Identity(n, n);
  const MatrixXd a2 = a * a;
  MatrixXd power = ident;
  MatrixXd u_inner = MatrixXd::Zero(n, n);
  MatrixXd v = MatrixXd::Zero(n, n);
  for (std::size_t k = 0; 2 * k + 1 < b.size(); ++k) {
    v += b[2 * k] * power;
    u_inner += b[2 * k + 1] * power;
    power = power * a2;
  }
  return solve_pade(a * u_inner, v);
}

MatrixXd pade13(const MatrixXd& a) {
  const auto n = a.rows();
  const auto& b = kPade13;
  const MatrixXd ident = MatrixXd::Identity(n, n);
  const MatrixXd a2 = a * a;
  const MatrixXd a4 = a2 * a2;
  const MatrixXd a6 = a4 * a2;
  const MatrixXd u_inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 +
                           b[3] * a2 + b[1] * ident;
  const MatrixXd u = a * u_inner;
  const MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                     b[2] * a2 + b[0] * ident;
  return solve_pade(u, v);
}

}  // namespace

MatrixXd matrix_exponential(const Eigen::Ref<const MatrixXd>& a) {
  if (a.rows() != a.cols()) {
    throw ConfigError("matrix_exponential: input must be square");
  }
  if (!a.allFinite()) {
    throw NumericError("matrix_exponential: input has non-finite entries");
  }
  const auto n = a.rows();
  if (n == 0) return MatrixXd(0, 0);

  const MatrixXd m = a;
  const double norm = one_norm(m);
  if (norm == 0.0) return MatrixXd::Identity(n, n);
  if (norm <= kTheta3) return pade_low(m, kPade3);
  if (norm <= kTheta5) return pade_low(m, kPade5);
  if (norm <= kTheta7) return pade_low(m, kPade7);
  if (norm <= kTheta9) return pade_low(m, kPade9);

  int squarings = 0;
  if (norm > kTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kTheta13)));
  }
  MatrixXd result = pade13(m / std::ldexp(1.0, squarings));
  for (int i = 0; i < squarings; ++i) {
    result = result * result;
  }
  if (!result.allFinite()) {
    throw NumericError("matrix_exponential: result overflowed");
  }
  return result;
}

}  // namespace trisw
