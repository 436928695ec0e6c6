#pragma once

#include <Eigen/Core>

namespace trisw {

/**
 * Matrix exponential by scaling and squaring with a diagonal Padé core.
 *
 * The Padé degree (3, 5, 7, 9 or 13) and the number of squarings are chosen
 * from the 1-norm of the input so that the backward error of the rational
 * approximant stays at unit roundoff (Higham 2005 thresholds). The result is a
 * deterministic function of the input bits.
 *
 * Throws ConfigError for a non-square input and NumericError when an entry is
 * not finite or the Padé denominator cannot be factored.
 */
Eigen::MatrixXd matrix_exponential(const Eigen::Ref<const Eigen::MatrixXd>& a);

}  // namespace trisw
