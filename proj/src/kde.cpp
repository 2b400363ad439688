#include "lookout/kde.hpp"

#include <limits>
#include <stdexcept>

namespace lookout {

Bandwidth::Bandwidth(double h_value, int dim) : h(h_value), m(dim) {
  if (!(h_value > 0.0) || !std::isfinite(h_value)) {
    throw std::invalid_argument("bandwidth must be positive and finite");
  }
  if (dim < 1) throw std::invalid_argument("bandwidth dimension must be positive");
  det_sqrt_inv = std::pow(h_value, -0.5 * dim);
}

namespace {

void check_bandwidth(const Bandwidth& bw, Eigen::Index m) {
  if (!(bw.h > 0.0)) throw std::invalid_argument("kde: bandwidth must be positive");
  if (bw.m != m) throw std::invalid_argument("kde: bandwidth dimension mismatch");
}

// Sum over j != i of K((y_i - y_j) / sqrt(h)), without the self term.
Eigen::VectorXd neighbour_sums(const DataMatrix& points, const Bandwidth& bw, KernelKind kind) {
  const Eigen::Index n = points.rows();
  const Eigen::Index m = points.cols();
  if (n < 2) throw std::invalid_argument("kde_at_points: need at least two points");
  check_bandwidth(bw, m);
  require_finite(points, "kde_at_points");

  const double peak = kernel_peak(kind, static_cast<int>(m));
  const Eigen::MatrixXd scaled = points.transpose() / std::sqrt(bw.h);

  // Pair terms are shared between both endpoints; accumulation order is fixed.
  Eigen::VectorXd sums = Eigen::VectorXd::Zero(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double* pj = scaled.col(j).data();
    for (Eigen::Index i = j + 1; i < n; ++i) {
      const double* pi = scaled.col(i).data();
      double sq = 0.0;
      for (Eigen::Index k = 0; k < m; ++k) {
        const double d = pj[k] - pi[k];
        sq += d * d;
      }
      const double kv = kernel_from_squared_norm(sq, kind, peak);
      sums(j) += kv;
      sums(i) += kv;
    }
  }
  return sums;
}

}  // namespace

Eigen::VectorXd kde_at_points(const DataMatrix& points, const Bandwidth& bw, KernelKind kind) {
  const Eigen::VectorXd others = neighbour_sums(points, bw, kind);
  const double peak = kernel_peak(kind, bw.m);
  return (others.array() + peak).matrix() * (bw.det_sqrt_inv / static_cast<double>(points.rows()));
}

Eigen::VectorXd kde_eval(const DataMatrix& points, const DataMatrix& queries, const Bandwidth& bw,
                         KernelKind kind) {
  const Eigen::Index n = points.rows();
  const Eigen::Index m = points.cols();
  if (n < 1) throw std::invalid_argument("kde_eval: no sample points");
  if (queries.cols() != m) throw std::invalid_argument("kde_eval: query dimension mismatch");
  check_bandwidth(bw, m);

  const double peak = kernel_peak(kind, static_cast<int>(m));
  const double inv_h = 1.0 / bw.h;
  Eigen::VectorXd out(queries.rows());
  for (Eigen::Index q = 0; q < queries.rows(); ++q) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      acc += kernel_from_squared_norm((queries.row(q) - points.row(i)).squaredNorm() * inv_h, kind, peak);
    }
    out(q) = acc * bw.det_sqrt_inv / static_cast<double>(n);
  }
  return out;
}

Eigen::VectorXd loo_kde(const Eigen::VectorXd& f, Eigen::Index n, const Bandwidth& bw, KernelKind kind) {
  if (n < 2) throw std::invalid_argument("loo_kde: need at least two points");
  if (f.size() != n) throw std::invalid_argument("loo_kde: density vector length mismatch");
  const double self = bw.det_sqrt_inv * kernel_peak(kind, bw.m);
  const double nd = static_cast<double>(n);
  // Differences within rounding of n f_i are indistinguishable from zero.
  constexpr double kCancellation = 8.0 * std::numeric_limits<double>::epsilon();
  Eigen::VectorXd out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double total = nd * f(i);
    const double rest = total - self;
    out(i) = rest <= kCancellation * total ? kDensityFloor : std::max(rest / (nd - 1.0), kDensityFloor);
  }
  return out;
}

Eigen::VectorXd surprisals(const Eigen::VectorXd& f) {
  return -f.array().max(kDensityFloor).log().matrix();
}

DensityValues density_values(const DataMatrix& points, const Bandwidth& bw, KernelKind kind) {
  DensityValues out;
  // Same values as loo_kde(f), evaluated from the neighbour sums so that
  // isolated points keep their digits instead of cancelling against K(0).
  const Eigen::VectorXd others = neighbour_sums(points, bw, kind);
  const double nd = static_cast<double>(points.rows());
  out.f = (others.array() + kernel_peak(kind, bw.m)).matrix() * (bw.det_sqrt_inv / nd);
  out.f_loo = (others * (bw.det_sqrt_inv / (nd - 1.0))).cwiseMax(kDensityFloor);
  out.s = surprisals(out.f);
  out.s_loo = surprisals(out.f_loo);
  return out;
}

}  // namespace lookout
