#include "lookout/experiments.hpp"
#include "lookout/fat_tail.hpp"
#include "lookout/quantile.hpp"
#include "lookout/rips_zero.hpp"
#include "lookout/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>

namespace lookout {

namespace {

// Death diameters above this size use the k-d tree MST.
constexpr Eigen::Index kDenseMstLimit = 4096;

// Runs task(i) for i in [0, count) on up to `threads` workers; rethrows the
// first failure by index.
template <typename Task>
void parallel_for(std::size_t count, unsigned threads, Task&& task) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  std::vector<std::exception_ptr> errors(count);
  auto run = [&](std::size_t i) {
    try {
      task(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) run(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) run(i);
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

unsigned harness_threads() {
  if (const char* env = std::getenv("LOOKOUT_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

double median(std::vector<double> values) { return type7_quantile(std::move(values), 0.5); }

ComparisonRow evaluate_cell(const LabeledDataset& ds, const LookoutParams& params) {
  const AnomalyResult result = run_lookout(ds.data, params);
  ComparisonRow row;
  row.iteration = ds.meta.iteration;
  row.rep = ds.meta.rep;
  row.parameter = ds.meta.parameter;
  row.variant = params.variant;
  row.counts = confusion(result.flags, ds.labels);
  row.tpr = true_positive_rate(row.counts);
  row.fpr = false_positive_rate(row.counts);
  row.fmeasure = fmeasure(row.counts);
  row.gmean = gmean(row.counts);
  row.auc = roc_auc(std::span<const double>(result.probabilities.data(),
                                            static_cast<std::size_t>(result.probabilities.size())),
                    ds.labels);
  return row;
}

ComparisonTable run_comparison(int id, std::vector<int> iterations, int reps, std::uint64_t seed,
                               const LookoutParams& base) {
  if (reps < 1) throw std::invalid_argument("run_comparison: reps must be positive");
  const int grid = experiment_iterations(id);
  if (iterations.empty()) {
    for (int it = 1; it <= grid; ++it) iterations.push_back(it);
  }
  std::sort(iterations.begin(), iterations.end());
  iterations.erase(std::unique(iterations.begin(), iterations.end()), iterations.end());
  for (int it : iterations) experiment_parameter(id, it);  // validates the grid

  struct Cell {
    int iteration;
    int rep;
  };
  std::vector<Cell> cells;
  for (int it : iterations) {
    for (int rep = 0; rep < reps; ++rep) cells.push_back({it, rep});
  }

  ComparisonTable table;
  table.id = id;
  table.rows.resize(cells.size() * 2);
  parallel_for(cells.size(), harness_threads(), [&](std::size_t c) {
    const LabeledDataset ds = generate_experiment(id, cells[c].iteration, seed, cells[c].rep);
    for (int v = 0; v < 2; ++v) {
      LookoutParams params = base;
      params.variant = v == 0 ? Variant::V1 : Variant::V2;
      params.scale = base.scale && experiment_uses_scaling(id);
      table.rows[2 * c + static_cast<std::size_t>(v)] = evaluate_cell(ds, params);
    }
  });

  for (int it : iterations) {
    for (Variant variant : {Variant::V1, Variant::V2}) {
      std::vector<double> tpr, fpr, fm, gm, auc;
      ComparisonSummary s;
      s.iteration = it;
      s.parameter = experiment_parameter(id, it);
      s.variant = variant;
      for (const auto& row : table.rows) {
        if (row.iteration != it || row.variant != variant) continue;
        tpr.push_back(row.tpr);
        fpr.push_back(row.fpr);
        fm.push_back(row.fmeasure);
        gm.push_back(row.gmean);
        auc.push_back(row.auc);
      }
      s.reps = static_cast<int>(tpr.size());
      s.tpr = median(tpr);
      s.fpr = median(fpr);
      s.fmeasure = median(fm);
      s.gmean = median(gm);
      s.auc = median(auc);
      table.summary.push_back(s);
    }
  }
  return table;
}

SampleFamily parse_family(const std::string& name) {
  if (name == "gaussian") return SampleFamily::Gaussian;
  if (name == "fat_tail" || name == "fat-tail") return SampleFamily::FatTail;
  throw std::invalid_argument("unknown sample family '" + name + "' (expected gaussian or fat_tail)");
}

std::string family_name(SampleFamily family) {
  return family == SampleFamily::Gaussian ? "gaussian" : "fat_tail";
}

DeathDiameters sweep_deaths(const DataMatrix& points) {
  return points.rows() > kDenseMstLimit ? death_diameters_kdtree(points) : death_diameters(points);
}

namespace {

DataMatrix sample_family(SampleFamily family, Eigen::Index n, int m, const std::optional<RadialTailLaw>& law,
                         std::uint64_t seed) {
  return family == SampleFamily::Gaussian ? sample_gaussian(n, m, seed) : sample_fat_tail(n, *law, seed);
}

std::optional<RadialTailLaw> law_for(SampleFamily family, int m) {
  if (family == SampleFamily::FatTail) return RadialTailLaw(m);
  return std::nullopt;
}

}  // namespace

std::vector<AsymptoticsRecord> asymptotics_sweep(SampleFamily family, int m, const std::vector<Eigen::Index>& n_grid,
                                                 double gamma, int reps, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("asymptotics_sweep: dimension must be positive");
  if (reps < 1) throw std::invalid_argument("asymptotics_sweep: reps must be positive");
  if (n_grid.empty()) throw std::invalid_argument("asymptotics_sweep: empty n grid");
  for (std::size_t k = 0; k < n_grid.size(); ++k) {
    if (n_grid[k] < 2) throw std::invalid_argument("asymptotics_sweep: n must be at least 2");
    if (k > 0 && n_grid[k] <= n_grid[k - 1]) throw std::invalid_argument("asymptotics_sweep: n grid must ascend");
  }
  const auto law = law_for(family, m);

  std::vector<AsymptoticsRecord> records(n_grid.size() * static_cast<std::size_t>(reps));
  parallel_for(records.size(), harness_threads(), [&](std::size_t idx) {
    const Eigen::Index n = n_grid[idx / static_cast<std::size_t>(reps)];
    const int rep = static_cast<int>(idx % static_cast<std::size_t>(reps));
    const DataMatrix x = sample_family(family, n, m, law,
                                       derive_seed(seed, {static_cast<std::uint64_t>(family),
                                                          static_cast<std::uint64_t>(m),
                                                          static_cast<std::uint64_t>(n),
                                                          static_cast<std::uint64_t>(rep)}));
    const DeathDiameters deaths = sweep_deaths(x);
    AsymptoticsRecord r;
    r.n = n;
    r.m = m;
    r.rep = rep;
    r.gamma = gamma;
    r.d_value = quantile_diameter(deaths, gamma);
    r.d_max = deaths.values.back();
    r.scaled = r.d_value * std::pow(static_cast<double>(n), 1.0 / m);
    r.admissibility = static_cast<double>(n) * std::pow(r.d_value, 0.5 * m);
    records[idx] = r;
  });
  return records;
}

Eigen::Index counterexample_index(Eigen::Index n, int m) {
  const double nd = static_cast<double>(n);
  return static_cast<Eigen::Index>(std::llround(nd - 0.25 * std::pow(nd, 1.0 - 2.0 / m)));
}

double counterexample_trial(Eigen::Index n, int m, int reps, std::uint64_t seed, SampleFamily family) {
  if (m < 3) throw std::invalid_argument("counterexample_trial: requires m >= 3");
  if (reps < 1) throw std::invalid_argument("counterexample_trial: reps must be positive");
  if (n < 2) throw std::invalid_argument("counterexample_trial: n must be at least 2");
  const Eigen::Index omega = counterexample_index(n, m);
  if (omega < 1 || omega > n - 1) {
    throw std::invalid_argument("counterexample_trial: death index outside 1..n-1");
  }
  const auto law = law_for(family, m);

  std::vector<char> exceeded(static_cast<std::size_t>(reps), 0);
  parallel_for(exceeded.size(), harness_threads(), [&](std::size_t rep) {
    const DataMatrix x = sample_family(family, n, m, law,
                                       derive_seed(seed, {0xce11ULL, static_cast<std::uint64_t>(family),
                                                          static_cast<std::uint64_t>(m),
                                                          static_cast<std::uint64_t>(n),
                                                          static_cast<std::uint64_t>(rep)}));
    const DeathDiameters deaths = sweep_deaths(x);
    exceeded[rep] = deaths.values[static_cast<std::size_t>(omega - 1)] > 1.0;
  });
  return static_cast<double>(std::count(exceeded.begin(), exceeded.end(), 1)) / reps;
}

}  // namespace lookout
