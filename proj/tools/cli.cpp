#include "cli.hpp"

#include "lookout/csv.hpp"
#include "lookout/experiments.hpp"
#include "lookout/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>

namespace lookout::cli {

namespace {

// Writes to `path`, or to `fallback` when path is "-".
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw std::runtime_error("cannot open '" + path + "' for writing");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

std::string variant_name(Variant v) { return v == Variant::V1 ? "v1" : "v2"; }

std::string summary_path_for(const std::string& output) {
  const auto dot = output.rfind('.');
  const auto slash = output.find_last_of('/');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return output + "_summary";
  return output.substr(0, dot) + "_summary" + output.substr(dot);
}

struct DetectOptions {
  std::string input;
  std::string output = "-";
  double alpha = 0.001;
  double beta = 0.90;
  double gamma = 0.98;
  bool no_scale = false;
  std::string kernel = "gaussian";
  std::string variant = "v2";
};

int detect(const DetectOptions& o, std::ostream& out) {
  LookoutParams params;
  params.alpha = o.alpha;
  params.beta = o.beta;
  params.gamma = o.gamma;
  params.scale = !o.no_scale;
  params.kernel = o.kernel == "epanechnikov" ? KernelKind::Epanechnikov : KernelKind::Gaussian;
  params.variant = o.variant == "v1" ? Variant::V1 : Variant::V2;
  params.validate();

  std::ifstream in(o.input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + o.input + "'");
  const NumericCsv csv = read_numeric_csv(in);
  const AnomalyResult result = run_lookout(csv.values, params);

  Sink sink(o.output, out);
  auto& os = sink.stream();
  write_csv_row(os, {"index", "surprisal_loo", "probability", "flag"});
  for (Eigen::Index i = 0; i < result.probabilities.size(); ++i) {
    write_csv_row(os, {std::to_string(i + 1), format_double(result.surprisals_loo(i)),
                       format_double(result.probabilities(i)),
                       result.flags[static_cast<std::size_t>(i)] ? "1" : "0"});
  }
  return 0;
}

struct ExperimentOptions {
  int id = 1;
  int reps = 10;
  std::uint64_t seed = 1;
  std::vector<int> iterations;
  std::string output;
  std::string summary;
};

int experiment(const ExperimentOptions& o, std::ostream& out) {
  const ComparisonTable table = run_comparison(o.id, o.iterations, o.reps, o.seed);
  const std::string output = o.output.empty() ? "experiment_" + std::to_string(o.id) + ".csv" : o.output;
  const std::string summary = o.summary.empty() ? summary_path_for(output) : o.summary;
  {
    Sink sink(output, out);
    auto& os = sink.stream();
    write_csv_row(os, {"experiment", "iteration", "parameter", "rep", "variant", "tp", "fp", "tn", "fn", "tpr",
                       "fpr", "fmeasure", "gmean", "auc"});
    for (const auto& r : table.rows) {
      write_csv_row(os, {std::to_string(table.id), std::to_string(r.iteration), format_double(r.parameter),
                         std::to_string(r.rep + 1), variant_name(r.variant), std::to_string(r.counts.tp),
                         std::to_string(r.counts.fp), std::to_string(r.counts.tn), std::to_string(r.counts.fn),
                         format_double(r.tpr), format_double(r.fpr), format_double(r.fmeasure),
                         format_double(r.gmean), format_double(r.auc)});
    }
  }
  Sink sink(summary, out);
  auto& os = sink.stream();
  write_csv_row(os, {"experiment", "iteration", "parameter", "variant", "reps", "median_tpr", "median_fpr",
                     "median_fmeasure", "median_gmean", "median_auc"});
  for (const auto& s : table.summary) {
    write_csv_row(os, {std::to_string(table.id), std::to_string(s.iteration), format_double(s.parameter),
                       variant_name(s.variant), std::to_string(s.reps), format_double(s.tpr), format_double(s.fpr),
                       format_double(s.fmeasure), format_double(s.gmean), format_double(s.auc)});
  }
  return 0;
}

struct AsymptoticsOptions {
  std::string family = "gaussian";
  int dim = 2;
  std::vector<Eigen::Index> n_grid{200, 2000, 20000};
  double gamma = 0.98;
  int reps = 10;
  std::uint64_t seed = 1;
  std::string output = "-";
};

int asymptotics(const AsymptoticsOptions& o, std::ostream& out) {
  const SampleFamily family = parse_family(o.family);
  const auto records = asymptotics_sweep(family, o.dim, o.n_grid, o.gamma, o.reps, o.seed);
  Sink sink(o.output, out);
  auto& os = sink.stream();
  write_csv_row(os, {"family", "n", "m", "rep", "gamma", "d_gamma", "d_max", "scaled", "admissibility"});
  for (const auto& r : records) {
    write_csv_row(os, {family_name(family), std::to_string(r.n), std::to_string(r.m), std::to_string(r.rep + 1),
                       format_double(r.gamma), format_double(r.d_value), format_double(r.d_max),
                       format_double(r.scaled), format_double(r.admissibility)});
  }
  return 0;
}

struct CounterexampleOptions {
  std::string family = "fat_tail";
  int dim = 3;
  std::vector<Eigen::Index> n{10000, 100000};
  int reps = 50;
  std::uint64_t seed = 1;
  std::string output = "-";
};

int counterexample(const CounterexampleOptions& o, std::ostream& out) {
  const SampleFamily family = parse_family(o.family);
  Sink sink(o.output, out);
  auto& os = sink.stream();
  write_csv_row(os, {"family", "n", "m", "omega", "reps", "fraction_above_one"});
  for (Eigen::Index n : o.n) {
    const double fraction = counterexample_trial(n, o.dim, o.reps, o.seed, family);
    write_csv_row(os, {family_name(family), std::to_string(n), std::to_string(o.dim),
                       std::to_string(counterexample_index(n, o.dim)), std::to_string(o.reps),
                       format_double(fraction)});
  }
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Anomaly detection with persistent-homology bandwidths and extreme value calibration", "lookout"};
  app.require_subcommand(1);

  DetectOptions d;
  auto* det = app.add_subcommand("detect", "Score every row of a numeric CSV file");
  det->add_option("input", d.input, "CSV file with a header row and numeric columns")->required();
  det->add_option("-o,--output", d.output, "Output CSV ('-' for stdout)");
  det->add_option("--alpha", d.alpha, "Flag threshold on probabilities")->capture_default_str();
  det->add_option("--beta", d.beta, "Quantile level splitting off the GPD tail")->capture_default_str();
  det->add_option("--gamma", d.gamma, "Death-diameter quantile level for the bandwidth")->capture_default_str();
  det->add_flag("--no-scale", d.no_scale, "Skip standardization");
  det->add_option("--kernel", d.kernel, "Kernel")
      ->check(CLI::IsMember({"gaussian", "epanechnikov"}))
      ->capture_default_str();
  det->add_option("--variant", d.variant, "Algorithm version")->check(CLI::IsMember({"v1", "v2"}))->capture_default_str();

  ExperimentOptions e;
  auto* exp = app.add_subcommand("experiment", "Compare v1 and v2 on a synthetic experiment");
  exp->add_option("--id", e.id, "Experiment 1-7")->required()->check(CLI::Range(1, kExperimentCount));
  exp->add_option("--reps", e.reps, "Replications per iteration")->capture_default_str()->check(CLI::PositiveNumber);
  exp->add_option("--seed", e.seed, "Base seed")->capture_default_str();
  exp->add_option("--iterations", e.iterations, "Subset of 1-based grid iterations")->delimiter(',');
  exp->add_option("-o,--output", e.output, "Long-form results CSV (default experiment_<id>.csv)");
  exp->add_option("--summary", e.summary, "Median summary CSV (default <output>_summary.csv)");

  AsymptoticsOptions a;
  auto* asy = app.add_subcommand("asymptotics", "Death-diameter quantiles over a grid of sample sizes");
  asy->add_option("--family", a.family, "gaussian or fat_tail")->capture_default_str();
  asy->add_option("--dim", a.dim, "Dimension m")->capture_default_str();
  asy->add_option("--n-grid", a.n_grid, "Ascending sample sizes")->delimiter(',');
  asy->add_option("--gamma", a.gamma, "Quantile level")->capture_default_str();
  asy->add_option("--reps", a.reps, "Replications per n")->capture_default_str()->check(CLI::PositiveNumber);
  asy->add_option("--seed", a.seed, "Base seed")->capture_default_str();
  asy->add_option("-o,--output", a.output, "Output CSV ('-' for stdout)");

  CounterexampleOptions c;
  auto* cex = app.add_subcommand("counterexample", "Fraction of fat-tailed samples whose probed death exceeds 1");
  cex->add_option("--family", c.family, "fat_tail or gaussian")->capture_default_str();
  cex->add_option("--dim", c.dim, "Dimension m (>= 3)")->capture_default_str();
  cex->add_option("--n", c.n, "Sample sizes")->delimiter(',');
  cex->add_option("--reps", c.reps, "Replications")->capture_default_str()->check(CLI::PositiveNumber);
  cex->add_option("--seed", c.seed, "Base seed")->capture_default_str();
  cex->add_option("-o,--output", c.output, "Output CSV ('-' for stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    return app.exit(ex, out, err);
  }

  try {
    if (*det) return detect(d, out);
    if (*exp) return experiment(e, out);
    if (*asy) return asymptotics(a, out);
    if (*cex) return counterexample(c, out);
  } catch (const CsvError& ex) {
    err << "lookout: " << d.input << ": " << ex.what() << '\n';
    return 2;
  } catch (const std::exception& ex) {
    err << "lookout: " << ex.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace lookout::cli
