#pragma once

#include "lookout/types.hpp"

#include <vector>

namespace lookout {

/// Finite death diameters of the degree-0 Vietoris-Rips persistence,
/// ascending. A point cloud of n points has n - 1 of them; they are the
/// edge lengths of a Euclidean minimum spanning tree.
struct DeathDiameters {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
};

namespace detail {

/// Dense Prim over points stored one per column (m x n).
DeathDiameters prim_deaths(const Eigen::MatrixXd& columns);

/// Exact Boruvka MST accelerated by a k-d tree, points one per column.
DeathDiameters kdtree_boruvka_deaths(const Eigen::MatrixXd& columns);

}  // namespace detail

/// O(n^2) time, O(n) extra memory. Rows of `points` are the observations.
template <typename Derived>
DeathDiameters death_diameters(const Eigen::MatrixBase<Derived>& points) {
  if (points.rows() < 2) throw std::invalid_argument("death_diameters: need at least two points");
  require_finite(points, "death_diameters");
  return detail::prim_deaths(points.transpose());
}

/// Same result as death_diameters, subquadratic in practice for low dimension.
template <typename Derived>
DeathDiameters death_diameters_kdtree(const Eigen::MatrixBase<Derived>& points) {
  if (points.rows() < 2) throw std::invalid_argument("death_diameters: need at least two points");
  require_finite(points, "death_diameters");
  return detail::kdtree_boruvka_deaths(points.transpose());
}

/// Type-7 gamma-quantile of the deaths, gamma in (0, 1).
double quantile_diameter(const DeathDiameters& deaths, double gamma);

/// d_{i*} where i* maximizes d_{i+1} - d_i; ties go to the smallest i.
double max_gap_diameter(const DeathDiameters& deaths);

}  // namespace lookout
