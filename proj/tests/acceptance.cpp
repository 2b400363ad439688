// Acceptance checks for the library and CLI. One line per criterion;
// exit status is nonzero if any criterion fails.

#include "cli.hpp"
#include "lookout/evt_gpd.hpp"
#include "lookout/experiments.hpp"
#include "lookout/fat_tail.hpp"
#include "lookout/kde.hpp"
#include "lookout/metrics.hpp"
#include "lookout/pipeline.hpp"
#include "lookout/rips_zero.hpp"
#include "lookout/rng.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"

using namespace lookout;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

Verdict mst_oracle() {
  Stopwatch clock;
  Rng rng(derive_seed(1001, {}));
  std::uniform_int_distribution<int> size(2, 12), dim(1, 4);
  int mismatches = 0;
  for (int c = 0; c < 500; ++c) {
    const Eigen::MatrixXd x = oracle::normal_cloud(rng, size(rng), dim(rng));
    if (death_diameters(x).values != oracle::kruskal_weights(x)) ++mismatches;
  }
  const double t = clock.seconds();
  return {mismatches == 0 && t < 5.0, fmt("%d/500 clouds differ, %.2f s", mismatches, t)};
}

Verdict kde_bounds() {
  Rng rng(derive_seed(1002, {}));
  std::uniform_int_distribution<int> size(2, 60), dim(1, 5);
  std::uniform_real_distribution<double> logh(std::log(0.05), std::log(5.0));
  int bound_failures = 0, loo_failures = 0;
  double worst = 0.0;
  for (int c = 0; c < 1000; ++c) {
    const Eigen::MatrixXd x = oracle::normal_cloud(rng, size(rng), dim(rng));
    const Eigen::Index n = x.rows();
    const int m = static_cast<int>(x.cols());
    const Bandwidth bw(std::exp(logh(rng)), m);
    const KernelKind kind = c % 2 == 0 ? KernelKind::Gaussian : KernelKind::Epanechnikov;
    const DensityValues dv = density_values(x, bw, kind);
    const double upper = kernel_peak(kind, m) * bw.det_sqrt_inv;
    const double lower = upper / static_cast<double>(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (dv.f(i) < lower * (1.0 - 1e-12) || dv.f(i) > upper * (1.0 + 1e-12)) ++bound_failures;
      const double direct =
          std::max(oracle::direct_kde(x, x.row(i), bw.h, kind == KernelKind::Gaussian, i), kDensityFloor);
      const double rel = std::abs(dv.f_loo(i) - direct) / direct;
      worst = std::max(worst, rel);
      if (rel > 1e-10) ++loo_failures;
    }
  }
  return {bound_failures == 0 && loo_failures == 0,
          fmt("bound violations %d, leave-one-out mismatches %d, worst relative error %.2e", bound_failures,
              loo_failures, worst)};
}

Verdict gpd_recovery() {
  Stopwatch clock;
  bool ok = true;
  std::string detail;
  for (double xi : {-0.5, -0.2, 0.0}) {
    std::vector<double> xi_err, sigma_err;
    int positive = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Rng rng(derive_seed(1003, {seed, static_cast<std::uint64_t>(xi * -10.0)}));
      const auto excesses = oracle::gpd_sample(rng, 5000, 1.0, xi);
      const GpdFit fit = fit_gpd_excesses(excesses, ShapeRange{-5.0, 0.0});
      xi_err.push_back(std::abs(fit.xi - xi));
      sigma_err.push_back(std::abs(fit.sigma - 1.0));
      if (fit.xi > 0.0) ++positive;
    }
    const double mx = oracle::median(xi_err), ms = oracle::median(sigma_err);
    ok = ok && mx <= 0.15 && ms <= 0.15 && positive == 0;
    detail += fmt("xi*=%.1f: |dxi| %.3f |dsigma| %.3f positive %d; ", xi, mx, ms, positive);
  }
  const double t = clock.seconds();
  return {ok && t < 30.0, detail + fmt("%.2f s", t)};
}

Verdict false_positives() {
  std::vector<double> fractions;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto r = run_lookout(sample_gaussian(1000, 2, derive_seed(1004, {seed})), {});
    fractions.push_back(static_cast<double>(std::count(r.flags.begin(), r.flags.end(), true)) / 1000.0);
  }
  const double med = oracle::median(fractions);
  return {med <= 0.005, fmt("median flagged fraction %.4f", med)};
}

std::pair<double, double> median_metric(const ComparisonTable& table, Variant v, double ComparisonRow::*field) {
  std::vector<double> values;
  for (const auto& row : table.rows)
    if (row.variant == v) values.push_back(row.*field);
  return {oracle::median(values), static_cast<double>(values.size())};
}

Verdict experiment1() {
  Stopwatch clock;
  const auto table = run_comparison(1, {1}, 10, 1005);
  const double v1 = median_metric(table, Variant::V1, &ComparisonRow::tpr).first;
  const double v2 = median_metric(table, Variant::V2, &ComparisonRow::tpr).first;
  const double t = clock.seconds();
  return {v2 >= 0.8 && v2 >= v1 && t < 120.0, fmt("median TPR v1 %.2f v2 %.2f, %.2f s", v1, v2, t)};
}

Verdict experiment3() {
  const auto table = run_comparison(3, {1}, 10, 1006);
  const double t1 = median_metric(table, Variant::V1, &ComparisonRow::tpr).first;
  const double t2 = median_metric(table, Variant::V2, &ComparisonRow::tpr).first;
  const double f1 = median_metric(table, Variant::V1, &ComparisonRow::fpr).first;
  const double f2 = median_metric(table, Variant::V2, &ComparisonRow::fpr).first;
  return {t2 >= t1 && f1 <= 0.01 && f2 <= 0.01,
          fmt("median TPR v1 %.2f v2 %.2f, median FPR v1 %.4f v2 %.4f", t1, t2, f1, f2)};
}

Verdict experiment7() {
  LookoutParams params;
  params.scale = false;
  int minimal = 0, perfect = 0;
  for (int rep = 0; rep < 10; ++rep) {
    const auto ds = generate_experiment(7, 20, 1007, rep);
    const auto r = run_lookout(ds.data, params);
    const Eigen::Index last = ds.data.rows() - 1;
    if (r.probabilities(last) <= r.probabilities.minCoeff()) {
      ++minimal;
      const double auc =
          roc_auc(std::span<const double>(r.probabilities.data(), static_cast<std::size_t>(r.probabilities.size())),
                  ds.labels);
      if (auc == 1.0) ++perfect;
    }
  }
  return {minimal >= 7 && perfect == minimal,
          fmt("anomaly has minimum p in %d/10 seeds, AUC = 1 in %d of those", minimal, perfect)};
}

Verdict admissibility() {
  Stopwatch clock;
  const std::vector<Eigen::Index> grid{200, 2000, 20000};
  const auto records = asymptotics_sweep(SampleFamily::Gaussian, 2, grid, 0.98, 10, 1008);
  std::vector<double> d_med, adm_med;
  for (Eigen::Index n : grid) {
    std::vector<double> d, a;
    for (const auto& r : records) {
      if (r.n != n) continue;
      d.push_back(r.d_value);
      a.push_back(r.admissibility);
    }
    d_med.push_back(oracle::median(d));
    adm_med.push_back(oracle::median(a));
  }
  const bool ok = d_med[0] > d_med[1] && d_med[1] > d_med[2] && adm_med[0] < adm_med[1] && adm_med[1] < adm_med[2];
  const double t = clock.seconds();
  return {ok && t < 180.0, fmt("median d %.4f %.4f %.4f, median n d^(m/2) %.1f %.1f %.1f, %.2f s", d_med[0], d_med[1],
                               d_med[2], adm_med[0], adm_med[1], adm_med[2], t)};
}

Verdict counterexample() {
  const double small = counterexample_trial(10000, 3, 50, 1009);
  const double large = counterexample_trial(100000, 3, 50, 1009);
  return {large > 0.0 && large >= small, fmt("fraction above one: n=1e4 %.2f, n=1e5 %.2f", small, large)};
}

Verdict auc_oracle() {
  Rng rng(derive_seed(1010, {}));
  std::uniform_int_distribution<int> size(2, 80), levels(1, 12);
  double worst = 0.0;
  for (int c = 0; c < 200; ++c) {
    const int n = size(rng);
    std::uniform_int_distribution<int> score(0, levels(rng));
    std::vector<double> scores(static_cast<std::size_t>(n));
    std::vector<bool> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      scores[static_cast<std::size_t>(i)] = 0.25 * score(rng);
      labels[static_cast<std::size_t>(i)] = std::bernoulli_distribution(0.3)(rng);
    }
    labels[0] = true;
    labels[1] = false;
    worst = std::max(worst, std::abs(roc_auc(scores, labels) - oracle::pairwise_auc(scores, labels)));
  }
  return {worst <= 1e-12, fmt("worst difference %.2e", worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Verdict cli_determinism() {
  const fs::path dir = fs::temp_directory_path() / "lookout_acceptance";
  fs::create_directories(dir);
  {
    const DataMatrix x = sample_gaussian(300, 3, 1011);
    std::ofstream os(dir / "input.csv", std::ios::binary);
    os.precision(17);
    os << "x,y,z\n";
    for (Eigen::Index i = 0; i < x.rows(); ++i) os << x(i, 0) << ',' << x(i, 1) << ',' << x(i, 2) << '\n';
  }
  const std::string input = (dir / "input.csv").string();
  using Make = std::function<std::vector<std::string>(const std::string&)>;
  const std::vector<std::pair<std::string, Make>> commands{
      {"detect", [&](const std::string& out) { return std::vector<std::string>{"detect", input, "-o", out}; }},
      {"experiment",
       [](const std::string& out) {
         return std::vector<std::string>{"experiment", "--id", "5", "--reps", "2", "--iterations", "1,10", "--seed",
                                         "3", "-o", out};
       }},
      {"asymptotics",
       [](const std::string& out) {
         return std::vector<std::string>{"asymptotics", "--n-grid", "100,400", "--reps", "3", "--seed", "3", "-o",
                                         out};
       }},
      {"counterexample", [](const std::string& out) {
         return std::vector<std::string>{"counterexample", "--n", "500,1000", "--reps", "3", "--seed", "3", "-o", out};
       }}};
  std::string detail;
  bool ok = true;
  for (const auto& [name, make] : commands) {
    std::vector<std::string> contents;
    for (const char* tag : {"a", "b"}) {
      const fs::path out = dir / (name + "_" + tag + ".csv");
      std::ostringstream sink;
      if (cli::run(make(out.string()), sink, sink) != 0) ok = false;
      std::string text = slurp(out);
      if (name == "experiment") text += slurp(dir / (name + "_" + tag + "_summary.csv"));
      contents.push_back(text);
    }
    const bool same = !contents[0].empty() && contents[0] == contents[1];
    ok = ok && same;
    detail += name + (same ? " identical; " : " DIFFERS; ");
  }
  return {ok, detail};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"MST oracle", mst_oracle},
      {"KDE bounds and leave-one-out", kde_bounds},
      {"GPD recovery", gpd_recovery},
      {"false-positive calibration", false_positives},
      {"experiment 1 direction", experiment1},
      {"experiment 3 direction", experiment3},
      {"experiment 7 ranking", experiment7},
      {"admissibility sweep", admissibility},
      {"counterexample direction", counterexample},
      {"AUC oracle", auc_oracle},
      {"CLI determinism", cli_determinism},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& ex) {
      v = {false, std::string("threw: ") + ex.what()};
    }
    if (!v.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(), v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
