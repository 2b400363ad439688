#include "lookout/experiments.hpp"

#include "lookout/quantile.hpp"
#include "lookout/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace lookout {

std::size_t LabeledDataset::anomaly_count() const {
  return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
}

namespace {

void check_id(int id) {
  if (id < 1 || id > kExperimentCount) throw std::invalid_argument("unknown experiment id " + std::to_string(id));
}

// Gamma with shape a and rate r.
double draw_gamma(Rng& rng, double shape, double rate) {
  return std::gamma_distribution<double>(shape, 1.0 / rate)(rng);
}

LabeledDataset allocate(Eigen::Index normal_rows, Eigen::Index anomaly_rows, Eigen::Index m) {
  LabeledDataset ds;
  ds.data.resize(normal_rows + anomaly_rows, m);
  ds.labels.assign(static_cast<std::size_t>(normal_rows + anomaly_rows), false);
  std::fill(ds.labels.begin() + normal_rows, ds.labels.end(), true);
  return ds;
}

LabeledDataset gamma_rates(int iteration, Rng& rng) {
  const double rate = experiment_parameter(1, iteration);
  LabeledDataset ds = allocate(500, 10, 2);
  for (Eigen::Index i = 0; i < ds.data.rows(); ++i) {
    const double r = i < 500 ? 2.0 : rate;
    for (int k = 0; k < 2; ++k) ds.data(i, k) = draw_gamma(rng, 2.0, r);
  }
  return ds;
}

LabeledDataset normal_means(int iteration, Rng& rng) {
  const double mu = experiment_parameter(2, iteration);
  std::normal_distribution<double> normal;
  LabeledDataset ds = allocate(1000, 10, 2);
  for (Eigen::Index i = 0; i < ds.data.rows(); ++i) {
    const double shift = i < 1000 ? 0.0 : mu;
    for (int k = 0; k < 2; ++k) ds.data(i, k) = shift + normal(rng);
  }
  return ds;
}

LabeledDataset normal_ring(int iteration, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(experiment_parameter(3, iteration));
  const Eigen::Index anomalies = n / 200;  // 0.005 n
  std::normal_distribution<double> normal;
  const double radius_sq = 2.0 * 2.2 * 2.2;
  const double half_width = std::sqrt(radius_sq);
  std::uniform_real_distribution<double> along(-half_width, half_width);

  LabeledDataset ds = allocate(n, anomalies, 2);
  ds.anomaly_means.resize(anomalies, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < 2; ++k) ds.data(i, k) = normal(rng);
  }
  for (Eigen::Index i = n; i < n + anomalies; ++i) {
    const double mu1 = along(rng);
    const double mu2 = std::sqrt(std::max(0.0, radius_sq - mu1 * mu1));
    ds.anomaly_means.row(i - n) << mu1, mu2;
    ds.data(i, 0) = mu1 + 0.1 * normal(rng);
    ds.data(i, 1) = mu2 + 0.1 * normal(rng);
  }
  return ds;
}

LabeledDataset gamma_boundary(int iteration, Rng& rng) {
  const auto n = static_cast<Eigen::Index>(experiment_parameter(4, iteration));
  const Eigen::Index anomalies = n / 200;
  LabeledDataset ds = allocate(n, anomalies, 2);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < 2; ++k) ds.data(i, k) = draw_gamma(rng, 2.0, 2.0);
  }

  DataMatrix candidates(n, 2);
  std::vector<double> norms(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < 2; ++k) candidates(i, k) = draw_gamma(rng, 2.2, 2.0);
    norms[static_cast<std::size_t>(i)] = candidates.row(i).norm();
  }
  const double cut = type7_quantile(norms, 0.99);
  std::vector<Eigen::Index> far;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (norms[static_cast<std::size_t>(i)] > cut) far.push_back(i);
  }
  if (static_cast<Eigen::Index>(far.size()) < anomalies) {
    throw std::runtime_error("experiment 4: too few candidates beyond the 0.99 norm quantile");
  }
  // Partial Fisher-Yates: sample without replacement.
  for (Eigen::Index k = 0; k < anomalies; ++k) {
    std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(k), far.size() - 1);
    std::swap(far[static_cast<std::size_t>(k)], far[pick(rng)]);
    ds.data.row(n + k) = candidates.row(far[static_cast<std::size_t>(k)]);
  }
  return ds;
}

LabeledDataset shifted_normals(int iteration, Rng& rng) {
  std::normal_distribution<double> normal;
  LabeledDataset ds = allocate(400, 5, 6);
  for (Eigen::Index i = 0; i < ds.data.rows(); ++i) {
    for (int k = 0; k < 6; ++k) ds.data(i, k) = normal(rng);
  }
  const double mean = 2.0 + (iteration - 1) * 0.5;
  for (Eigen::Index i = 400; i < 405; ++i) ds.data(i, 0) = mean + 0.2 * normal(rng);
  return ds;
}

LabeledDataset annulus(int iteration, Rng& rng, const AnnulusConfig& cfg) {
  std::uniform_real_distribution<double> unit;
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double inner_sq = cfg.inner_radius * cfg.inner_radius;
  const double outer_sq = cfg.outer_radius * cfg.outer_radius;
  LabeledDataset ds = allocate(800, 5, 3);
  for (Eigen::Index i = 0; i < ds.data.rows(); ++i) {
    double r;
    if (i < 800) {
      r = std::sqrt(inner_sq + unit(rng) * (outer_sq - inner_sq));  // uniform over the annulus area
    } else {
      r = cfg.anomaly_start_radius * (1.0 - (iteration - 1) / 9.0);
    }
    const double theta = angle(rng);
    ds.data(i, 0) = r * std::cos(theta);
    ds.data(i, 1) = r * std::sin(theta);
    ds.data(i, 2) = unit(rng);
  }
  return ds;
}

LabeledDataset unit_cube(int iteration, Rng& rng) {
  std::uniform_real_distribution<double> unit;
  LabeledDataset ds = allocate(499, 1, 20);
  for (Eigen::Index i = 0; i < ds.data.rows(); ++i) {
    for (int k = 0; k < 20; ++k) ds.data(i, k) = unit(rng);
  }
  ds.data.row(499).head(iteration).setConstant(0.9);
  return ds;
}

}  // namespace

int experiment_iterations(int id) {
  check_id(id);
  switch (id) {
    case 1: return 10;
    case 2: return 7;
    case 3:
    case 4: return 10;
    case 5:
    case 6: return 10;
    default: return 20;
  }
}

double experiment_parameter(int id, int iteration) {
  if (iteration < 1 || iteration > experiment_iterations(id)) {
    throw std::invalid_argument("iteration " + std::to_string(iteration) + " outside the grid of experiment " +
                                std::to_string(id));
  }
  switch (id) {
    case 1: return 0.1 * iteration;
    case 2: return 2.5 + 0.25 * (iteration - 1);
    case 3:
    case 4: return 1000.0 * iteration;
    default: return iteration;
  }
}

std::string experiment_parameter_name(int id) {
  check_id(id);
  switch (id) {
    case 1: return "rate";
    case 2: return "mean";
    case 3:
    case 4: return "n";
    default: return "iteration";
  }
}

bool experiment_uses_scaling(int id) {
  check_id(id);
  return id != 7;
}

LabeledDataset generate_experiment(int id, int iteration, std::uint64_t seed, int rep, const AnnulusConfig& annulus_cfg) {
  const double parameter = experiment_parameter(id, iteration);
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(id), static_cast<std::uint64_t>(iteration),
                             static_cast<std::uint64_t>(rep)}));
  LabeledDataset ds;
  switch (id) {
    case 1: ds = gamma_rates(iteration, rng); break;
    case 2: ds = normal_means(iteration, rng); break;
    case 3: ds = normal_ring(iteration, rng); break;
    case 4: ds = gamma_boundary(iteration, rng); break;
    case 5: ds = shifted_normals(iteration, rng); break;
    case 6: ds = annulus(iteration, rng, annulus_cfg); break;
    default: ds = unit_cube(iteration, rng); break;
  }
  ds.meta = ExperimentMeta{id, iteration, rep, experiment_parameter_name(id), parameter, seed};
  return ds;
}

}  // namespace lookout
