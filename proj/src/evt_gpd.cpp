#include "lookout/evt_gpd.hpp"

#include "lookout/nelder_mead.hpp"
#include "lookout/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace lookout {

namespace {

constexpr double kExponentialShape = 1e-8;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

double GpdFit::support_end() const {
  if (xi >= 0.0) return kInf;
  return u + sigma / -xi;
}

double gpd_neg_loglik(double sigma, double xi, std::span<const double> excesses) {
  if (excesses.empty()) throw std::invalid_argument("gpd_neg_loglik: empty excesses");
  if (!(sigma > 0.0)) return kInf;
  const double log_sigma = std::log(sigma);
  double total = 0.0;
  if (std::abs(xi) <= kExponentialShape) {
    for (double x : excesses) total += log_sigma + x / sigma;
    return total;
  }
  const double power = 1.0 + 1.0 / xi;
  for (double x : excesses) {
    const double arg = 1.0 + xi * x / sigma;
    if (arg <= 0.0) return kInf;
    total += log_sigma + power * std::log(arg);
  }
  return total;
}

GpdFit fit_gpd_excesses(std::span<const double> excesses, ShapeRange shape) {
  if (!(shape.lower <= shape.upper)) throw std::invalid_argument("fit_gpd: empty shape range");
  if (excesses.size() < kMinExceedances) throw std::invalid_argument("fit_gpd: tail too small; decrease beta");
  for (double x : excesses) {
    if (!(x > 0.0) || !std::isfinite(x)) throw std::invalid_argument("fit_gpd: excesses must be positive and finite");
  }

  GpdFit fit;
  fit.u = 0.0;
  fit.n_exceed = excesses.size();
  const auto [min_it, max_it] = std::minmax_element(excesses.begin(), excesses.end());
  const double max_excess = *max_it;
  const double mean_excess =
      std::accumulate(excesses.begin(), excesses.end(), 0.0) / static_cast<double>(excesses.size());

  if (*max_it - *min_it <= 1e-12 * max_excess) {
    // Point-mass tail: uniform-like guard instead of a degenerate likelihood.
    fit.xi = std::clamp(-1.0, shape.lower, shape.upper);
    fit.sigma = mean_excess;
    fit.neg_loglik = gpd_neg_loglik(fit.sigma, fit.xi, excesses);
    return fit;
  }

  const double log_sigma_lo = std::log(1e-8 * max_excess);
  const double log_sigma_hi = std::log(1e8 * max_excess);
  auto clamp_params = [&](const Eigen::VectorXd& p) {
    return std::pair{std::exp(std::clamp(p(0), log_sigma_lo, log_sigma_hi)),
                     std::clamp(p(1), shape.lower, shape.upper)};
  };
  auto objective = [&](const Eigen::VectorXd& p) {
    const auto [sigma, xi] = clamp_params(p);
    return gpd_neg_loglik(sigma, xi, excesses);
  };

  fit.sigma = mean_excess;
  fit.xi = std::clamp(0.0, shape.lower, shape.upper);
  fit.neg_loglik = gpd_neg_loglik(fit.sigma, fit.xi, excesses);

  Eigen::Vector2d start(std::log(mean_excess), std::clamp(-0.1, shape.lower, shape.upper));
  if (!std::isfinite(objective(start))) start(1) = fit.xi;
  const NelderMeadResult r = nelder_mead(objective, start);
  if (r.value < fit.neg_loglik) {
    std::tie(fit.sigma, fit.xi) = clamp_params(r.x);
    fit.neg_loglik = r.value;
  }
  return fit;
}

GpdFit fit_gpd(std::span<const double> sample, double beta, ShapeRange shape) {
  if (!(beta > 0.0 && beta < 1.0)) throw std::invalid_argument("fit_gpd: beta outside (0, 1)");
  if (sample.empty()) throw std::invalid_argument("fit_gpd: empty sample");
  for (double s : sample) {
    if (!std::isfinite(s)) throw std::invalid_argument("fit_gpd: non-finite sample");
  }
  const double u = type7_quantile(std::vector<double>(sample.begin(), sample.end()), beta);
  std::vector<double> excesses;
  for (double s : sample) {
    if (s > u) excesses.push_back(s - u);
  }
  GpdFit fit = fit_gpd_excesses(excesses, shape);
  fit.u = u;
  fit.beta = beta;
  return fit;
}

GpdFit fit_gpd_constrained(std::span<const double> surprisals, double beta) {
  return fit_gpd(surprisals, beta, ShapeRange{-5.0, 0.0});
}

double surprisal_probability(double s_loo, const GpdFit& fit) {
  const double tail = 1.0 - fit.beta;
  if (!(s_loo > fit.u)) return tail;
  const double x = s_loo - fit.u;
  if (std::abs(fit.xi) <= kExponentialShape) return tail * std::exp(-x / fit.sigma);
  const double arg = 1.0 + fit.xi * x / fit.sigma;
  if (arg <= 0.0) return 0.0;
  return std::clamp(tail * std::pow(arg, -1.0 / fit.xi), 0.0, tail);
}

}  // namespace lookout
