#pragma once

#include "lookout/evt_gpd.hpp"
#include "lookout/kde.hpp"
#include "lookout/types.hpp"

#include <vector>

namespace lookout {

enum class Variant {
  V1,  ///< min-max unitization, largest-gap bandwidth, free GPD shape
  V2,  ///< OGK standardization, quantile bandwidth, non-positive GPD shape
};

struct LookoutParams {
  double alpha = 0.001;
  double beta = 0.90;
  double gamma = 0.98;
  bool scale = true;
  KernelKind kernel = KernelKind::Gaussian;
  Variant variant = Variant::V2;

  /// Throws std::invalid_argument unless every level is in (0, 1) and alpha < 1 - beta.
  void validate() const;
};

struct AnomalyResult {
  Eigen::VectorXd probabilities;
  std::vector<bool> flags;
  Eigen::VectorXd surprisals_loo;
  double bandwidth_used = 0.0;
  GpdFit gpd;
};

/// Columnwise (x - min) / (max - min).
DataMatrix minmax_unitize(const DataMatrix& data);

/// Smallest sample size accepted by the detectors in dimension m.
Eigen::Index minimum_sample_size(Eigen::Index m);

AnomalyResult lookout_v2(const DataMatrix& data, const LookoutParams& params);
AnomalyResult lookout_v1(const DataMatrix& data, const LookoutParams& params);

/// Dispatches on params.variant.
AnomalyResult run_lookout(const DataMatrix& data, const LookoutParams& params);

/// Immutable detector; safe to share between threads.
class Lookout {
 public:
  explicit Lookout(LookoutParams params) : params_(params) { params_.validate(); }

  const LookoutParams& params() const { return params_; }
  AnomalyResult operator()(const DataMatrix& data) const { return run_lookout(data, params_); }

 private:
  LookoutParams params_;
};

}  // namespace lookout
