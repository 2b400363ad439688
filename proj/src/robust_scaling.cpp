#include "lookout/robust_scaling.hpp"

#include "lookout/quantile.hpp"

#include <cmath>
#include <vector>

namespace lookout {

double robust_scale(const Eigen::Ref<const Eigen::VectorXd>& column) {
  if (column.size() < 2) throw std::invalid_argument("robust_scale: insufficient data");
  require_finite(column, "robust_scale");
  std::vector<double> values(column.data(), column.data() + column.size());
  const double center = sample_median(values);
  for (double& v : values) v = std::abs(v - center);
  const double mad = sample_median(std::move(values));
  if (mad == 0.0) return kScaleFloor;
  return kMadConsistency * mad;
}

Eigen::VectorXd column_medians(const DataMatrix& data) {
  Eigen::VectorXd medians(data.cols());
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    const auto col = data.col(j);
    medians(j) = lower_median(std::vector<double>(col.data(), col.data() + col.size()));
  }
  return medians;
}

namespace {

// Gnanadesikan-Kettenring pairwise matrix of already unit-scaled columns.
Eigen::MatrixXd pairwise_gk(const DataMatrix& y) {
  const Eigen::Index m = y.cols();
  Eigen::MatrixXd cov(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double s = robust_scale(y.col(j));
    cov(j, j) = s * s;
    for (Eigen::Index k = 0; k < j; ++k) {
      const double plus = robust_scale(y.col(j) + y.col(k));
      const double minus = robust_scale(y.col(j) - y.col(k));
      cov(j, k) = cov(k, j) = 0.25 * (plus * plus - minus * minus);
    }
  }
  return cov;
}

Eigen::VectorXd column_scales(const DataMatrix& x) {
  Eigen::VectorXd s(x.cols());
  for (Eigen::Index j = 0; j < x.cols(); ++j) s(j) = robust_scale(x.col(j));
  return s;
}

bool well_conditioned(const Eigen::MatrixXd& sigma) {
  Eigen::LLT<Eigen::MatrixXd> llt(sigma);
  if (llt.info() != Eigen::Success) return false;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = eig.eigenvalues();
  return ev.minCoeff() > 1e-12 * ev.maxCoeff();
}

}  // namespace

RobustCovEstimate ogk_covariance(const DataMatrix& data) {
  const Eigen::Index n = data.rows();
  const Eigen::Index m = data.cols();
  if (m < 1) throw std::invalid_argument("ogk_covariance: empty dimension");
  if (n <= m) throw std::invalid_argument("ogk_covariance: underdetermined covariance");
  require_finite(data, "ogk_covariance");

  bool any_spread = false;
  for (Eigen::Index j = 0; j < m && !any_spread; ++j) {
    any_spread = (data.col(j).array() != data(0, j)).any();
  }
  if (!any_spread) throw std::invalid_argument("ogk_covariance: all columns constant");

  constexpr int kOrthogonalizationPasses = 2;

  // x_current = data * B_1 * B_2 * ..., with B_k = D_k^{-1} E_k. The inverse
  // map back to the original coordinates accumulates in `back`.
  DataMatrix x = data;
  Eigen::MatrixXd back = Eigen::MatrixXd::Identity(m, m);
  for (int pass = 0; pass < kOrthogonalizationPasses; ++pass) {
    const Eigen::VectorXd s = column_scales(x);
    const DataMatrix y = x * s.cwiseInverse().asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(pairwise_gk(y));
    const Eigen::MatrixXd& e = eig.eigenvectors();
    x = y * e;
    back = e.transpose() * s.asDiagonal() * back;
  }
  const Eigen::VectorXd gamma = column_scales(x).array().square();

  RobustCovEstimate est;
  est.medians = column_medians(data);
  Eigen::MatrixXd sigma = back.transpose() * gamma.asDiagonal() * back;
  sigma = 0.5 * (sigma + sigma.transpose()).eval();

  const double scale = sigma.trace() / static_cast<double>(m);
  double ridge = 0.0;
  if (!well_conditioned(sigma)) {
    ridge = 1e-10 * scale;
    while (!well_conditioned(sigma + ridge * Eigen::MatrixXd::Identity(m, m))) {
      ridge *= 10.0;
      if (ridge > 1e-2 * scale * (1.0 + 1e-9)) {
        throw std::runtime_error("ogk_covariance: covariance not positive definite after ridge");
      }
    }
    sigma += ridge * Eigen::MatrixXd::Identity(m, m);
  }
  est.sigma_hat = sigma;
  est.ridge = ridge;

  Eigen::MatrixXd inv = sigma.llt().solve(Eigen::MatrixXd::Identity(m, m));
  inv = 0.5 * (inv + inv.transpose()).eval();
  Eigen::LLT<Eigen::MatrixXd> chol(inv);
  if (chol.info() != Eigen::Success) {
    throw std::runtime_error("ogk_covariance: Cholesky of inverse covariance failed");
  }
  est.u_factor = chol.matrixU();
  return est;
}

DataMatrix standardize(const DataMatrix& data, const RobustCovEstimate& est) {
  const Eigen::Index m = data.cols();
  if (est.u_factor.rows() != m || est.u_factor.cols() != m || est.medians.size() != m) {
    throw std::invalid_argument("standardize: dimension mismatch");
  }
  require_finite(data, "standardize");
  // Row form of z_i = U (y_i - medians).
  return (data.rowwise() - est.medians.transpose()) * est.u_factor.transpose();
}

}  // namespace lookout
