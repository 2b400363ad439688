#pragma once

#include "lookout/types.hpp"

#include <cmath>
#include <numbers>

namespace lookout {

enum class KernelKind { Gaussian, Epanechnikov };

/// Density floor applied before taking logarithms.
inline constexpr double kDensityFloor = 1e-300;

/// Volume of the unit ball in R^m.
inline double unit_ball_volume(int m) {
  return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

/// K(0) for the kernel in R^m.
inline double kernel_peak(KernelKind kind, int m) {
  switch (kind) {
    case KernelKind::Gaussian:
      return std::pow(2.0 * std::numbers::pi, -0.5 * m);
    case KernelKind::Epanechnikov:
      return (m + 2.0) / (2.0 * unit_ball_volume(m));
  }
  return 0.0;
}

/// Kernel value as a function of the squared norm of its argument.
inline double kernel_from_squared_norm(double sq_norm, KernelKind kind, double peak) {
  switch (kind) {
    case KernelKind::Gaussian:
      return peak * std::exp(-0.5 * sq_norm);
    case KernelKind::Epanechnikov:
      return sq_norm < 1.0 ? peak * (1.0 - sq_norm) : 0.0;
  }
  return 0.0;
}

template <typename Derived>
double kernel_eval(const Eigen::MatrixBase<Derived>& u, KernelKind kind) {
  const int m = static_cast<int>(u.size());
  return kernel_from_squared_norm(u.squaredNorm(), kind, kernel_peak(kind, m));
}

/// Scalar bandwidth matrix H = h * I_m.
struct Bandwidth {
  double h = 1.0;
  int m = 1;
  double det_sqrt_inv = 1.0;  // |H|^{-1/2} = h^{-m/2}

  Bandwidth() = default;
  Bandwidth(double h_value, int dim);
};

/// Full-sample and leave-one-out densities at the observations and their surprisals.
struct DensityValues {
  Eigen::VectorXd f;
  Eigen::VectorXd f_loo;
  Eigen::VectorXd s;
  Eigen::VectorXd s_loo;
};

/// f_j = (1/n) h^{-m/2} sum_i K((y_j - y_i) / sqrt(h)) for every observation j.
Eigen::VectorXd kde_at_points(const DataMatrix& points, const Bandwidth& bw, KernelKind kind);

/// KDE built from `points` evaluated at each row of `queries`.
Eigen::VectorXd kde_eval(const DataMatrix& points, const DataMatrix& queries, const Bandwidth& bw,
                         KernelKind kind);

/// Closed-form leave-one-out values (n f_i - h^{-m/2} K(0)) / (n - 1), floored at
/// kDensityFloor. A numerator lost in the rounding of n f_i counts as zero.
Eigen::VectorXd loo_kde(const Eigen::VectorXd& f, Eigen::Index n, const Bandwidth& bw, KernelKind kind);

/// -ln f elementwise, with f floored at kDensityFloor.
Eigen::VectorXd surprisals(const Eigen::VectorXd& f);

/// f_loo equals loo_kde(f) mathematically but is summed over the other points directly.
DensityValues density_values(const DataMatrix& points, const Bandwidth& bw, KernelKind kind);

}  // namespace lookout
