#include "lookout/pipeline.hpp"

#include "lookout/rips_zero.hpp"
#include "lookout/robust_scaling.hpp"

#include <algorithm>
#include <stdexcept>

namespace lookout {

void LookoutParams::validate() const {
  auto unit = [](double v) { return v > 0.0 && v < 1.0; };
  if (!unit(alpha)) throw std::invalid_argument("alpha must lie in (0, 1)");
  if (!unit(beta)) throw std::invalid_argument("beta must lie in (0, 1)");
  if (!unit(gamma)) throw std::invalid_argument("gamma must lie in (0, 1)");
  if (!(alpha < 1.0 - beta)) throw std::invalid_argument("alpha must be smaller than 1 - beta");
}

DataMatrix minmax_unitize(const DataMatrix& data) {
  require_finite(data, "minmax_unitize");
  const Eigen::RowVectorXd lo = data.colwise().minCoeff();
  const Eigen::RowVectorXd range = data.colwise().maxCoeff() - lo;
  if ((range.array() <= 0.0).any()) {
    throw std::invalid_argument("degenerate column under min-max scaling");
  }
  return (data.rowwise() - lo).array().rowwise() / range.array();
}

Eigen::Index minimum_sample_size(Eigen::Index m) { return std::max<Eigen::Index>(10, m + 2); }

namespace {

void check_input(const DataMatrix& data, const LookoutParams& params) {
  params.validate();
  if (data.cols() < 1) throw std::invalid_argument("lookout: data has no columns");
  if (data.rows() < minimum_sample_size(data.cols())) {
    throw std::invalid_argument("lookout: need at least max(10, m + 2) observations");
  }
  require_finite(data, "lookout");
}

AnomalyResult score(const DataMatrix& z, double bandwidth, const LookoutParams& params, ShapeRange shape) {
  const Bandwidth bw(bandwidth, static_cast<int>(z.cols()));
  const DensityValues dens = density_values(z, bw, params.kernel);

  AnomalyResult result;
  result.bandwidth_used = bandwidth;
  result.gpd = fit_gpd(std::span<const double>(dens.s.data(), static_cast<std::size_t>(dens.s.size())),
                       params.beta, shape);
  result.surprisals_loo = dens.s_loo;
  result.probabilities.resize(z.rows());
  result.flags.resize(static_cast<std::size_t>(z.rows()));
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double p = surprisal_probability(dens.s_loo(i), result.gpd);
    result.probabilities(i) = p;
    result.flags[static_cast<std::size_t>(i)] = p < params.alpha;
  }
  return result;
}

}  // namespace

AnomalyResult lookout_v2(const DataMatrix& data, const LookoutParams& params) {
  check_input(data, params);
  const DataMatrix z = params.scale ? standardize(data, ogk_covariance(data)) : data;
  const double h = quantile_diameter(death_diameters(z), params.gamma);
  return score(z, h, params, ShapeRange{-5.0, 0.0});
}

AnomalyResult lookout_v1(const DataMatrix& data, const LookoutParams& params) {
  check_input(data, params);
  const DataMatrix z = params.scale ? minmax_unitize(data) : data;
  const double h = max_gap_diameter(death_diameters(z));
  return score(z, h, params, ShapeRange{-5.0, 5.0});
}

AnomalyResult run_lookout(const DataMatrix& data, const LookoutParams& params) {
  return params.variant == Variant::V1 ? lookout_v1(data, params) : lookout_v2(data, params);
}

}  // namespace lookout
