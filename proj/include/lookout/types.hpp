#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace lookout {

/// n observations in m dimensions, one observation per row.
using DataMatrix = Eigen::MatrixXd;

template <typename Derived>
void require_finite(const Eigen::DenseBase<Derived>& values, const char* what) {
  if (!values.derived().allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite input");
  }
}

}  // namespace lookout
