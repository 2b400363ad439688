#pragma once

#include "lookout/types.hpp"

namespace lookout {

/// Floor returned by robust_scale when the median absolute deviation is zero.
inline constexpr double kScaleFloor = 1e-12;

/// Consistency factor turning the MAD into a Gaussian standard deviation.
inline constexpr double kMadConsistency = 1.4826;

/// Robust location/scatter of a data matrix.
///
/// `sigma_hat` is the orthogonalized Gnanadesikan-Kettenring covariance and
/// `u_factor` the upper-triangular Cholesky factor of its inverse, so that
/// sigma_hat^{-1} = u_factor^T * u_factor. `ridge` records the diagonal
/// loading that was needed to make sigma_hat numerically positive definite
/// (0 when none).
struct RobustCovEstimate {
  Eigen::MatrixXd sigma_hat;
  Eigen::MatrixXd u_factor;
  Eigen::VectorXd medians;
  double ridge = 0.0;
};

/// 1.4826 * median(|x - median(x)|), floored at kScaleFloor. Uses the
/// ordinary median, so the scale of -x equals the scale of x exactly.
double robust_scale(const Eigen::Ref<const Eigen::VectorXd>& column);

/// Componentwise lower medians of the columns (the centring vector).
Eigen::VectorXd column_medians(const DataMatrix& data);

/// OGK covariance with two orthogonalization passes, plus the Cholesky
/// factor of the inverse used for standardization.
RobustCovEstimate ogk_covariance(const DataMatrix& data);

/// Rows z_i = U (y_i - medians).
DataMatrix standardize(const DataMatrix& data, const RobustCovEstimate& est);

}  // namespace lookout
