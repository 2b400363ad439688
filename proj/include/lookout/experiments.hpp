#pragma once

#include "lookout/metrics.hpp"
#include "lookout/pipeline.hpp"
#include "lookout/rips_zero.hpp"
#include "lookout/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace lookout {

struct ExperimentMeta {
  int id = 0;
  int iteration = 0;
  int rep = 0;
  std::string parameter_name;
  double parameter = 0.0;
  std::uint64_t seed = 0;
};

/// Data with ground-truth labels; planted anomalies are the trailing rows.
struct LabeledDataset {
  DataMatrix data;
  std::vector<bool> labels;
  ExperimentMeta meta;
  DataMatrix anomaly_means;  // ring centres of the planted anomalies (experiment 3 only)

  std::size_t anomaly_count() const;
};

/// Reconstructed annulus geometry for experiment 6.
struct AnnulusConfig {
  double inner_radius = 2.0;
  double outer_radius = 4.0;
  double anomaly_start_radius = 1.8;
};

inline constexpr int kExperimentCount = 7;

/// Number of grid points (iterations are 1-based) of an experiment.
int experiment_iterations(int id);

/// The varied quantity at an iteration: rate r, mean mu, sample size n, or the iteration itself.
double experiment_parameter(int id, int iteration);
std::string experiment_parameter_name(int id);

/// Experiment 7 is run without scaling; all others scale.
bool experiment_uses_scaling(int id);

LabeledDataset generate_experiment(int id, int iteration, std::uint64_t seed, int rep = 0,
                                   const AnnulusConfig& annulus = {});

struct ComparisonRow {
  int iteration = 0;
  int rep = 0;
  double parameter = 0.0;
  Variant variant = Variant::V2;
  ConfusionCounts counts;
  double tpr = 0.0;
  double fpr = 0.0;
  double fmeasure = 0.0;
  double gmean = 0.0;
  double auc = 0.0;
};

struct ComparisonSummary {
  int iteration = 0;
  double parameter = 0.0;
  Variant variant = Variant::V2;
  int reps = 0;
  double tpr = 0.0;
  double fpr = 0.0;
  double fmeasure = 0.0;
  double gmean = 0.0;
  double auc = 0.0;
};

struct ComparisonTable {
  int id = 0;
  std::vector<ComparisonRow> rows;          // sorted by (iteration, rep, variant)
  std::vector<ComparisonSummary> summary;   // medians over reps, by (iteration, variant)
};

/// Runs lookout v1 and v2 on every (iteration, rep) cell. An empty
/// `iterations` means the full grid. Cells run on up to harness_threads()
/// threads; output order does not depend on scheduling.
ComparisonTable run_comparison(int id, std::vector<int> iterations, int reps, std::uint64_t seed,
                               const LookoutParams& base = {});

/// Metrics of one detector run against labels.
ComparisonRow evaluate_cell(const LabeledDataset& ds, const LookoutParams& params);

/// Worker count: LOOKOUT_THREADS if set and positive, else hardware concurrency.
unsigned harness_threads();

double median(std::vector<double> values);

enum class SampleFamily { Gaussian, FatTail };

SampleFamily parse_family(const std::string& name);
std::string family_name(SampleFamily family);

struct AsymptoticsRecord {
  Eigen::Index n = 0;
  int m = 0;
  int rep = 0;
  double gamma = 0.0;
  double d_value = 0.0;        // d_{gamma(n-1)}
  double d_max = 0.0;          // d_{n-1}
  double scaled = 0.0;         // d_value * n^{1/m}
  double admissibility = 0.0;  // n * d_value^{m/2}
};

/// Death diameters, switching to the k-d tree MST for large clouds.
DeathDiameters sweep_deaths(const DataMatrix& points);

std::vector<AsymptoticsRecord> asymptotics_sweep(SampleFamily family, int m, const std::vector<Eigen::Index>& n_grid,
                                                 double gamma, int reps, std::uint64_t seed);

/// omega_n = round(n - n^{1 - 2/m} / 4), the 1-based death index probed by the counterexample.
Eigen::Index counterexample_index(Eigen::Index n, int m);

/// Fraction of reps whose death d_{omega_n} exceeds 1.
double counterexample_trial(Eigen::Index n, int m, int reps, std::uint64_t seed,
                            SampleFamily family = SampleFamily::FatTail);

}  // namespace lookout
