#pragma once

#include <cstddef>
#include <span>

namespace lookout {

/// Generalized Pareto fit to the exceedances of a threshold.
///
/// `u` is the type-7 beta-quantile of the fitted sample; exceedances x = s - u
/// for s > u follow Pr(X <= x) = 1 - (1 + xi x / sigma)^{-1/xi}.
struct GpdFit {
  double u = 0.0;
  double sigma = 1.0;
  double xi = 0.0;
  double beta = 0.9;
  std::size_t n_exceed = 0;
  double neg_loglik = 0.0;

  /// Upper endpoint of the exceedance support (u + sigma / -xi), +inf when xi >= 0.
  double support_end() const;
};

/// Inclusive range searched for the shape parameter.
struct ShapeRange {
  double lower = -5.0;
  double upper = 0.0;
};

inline constexpr std::size_t kMinExceedances = 5;

/// GPD negative log-likelihood of positive excesses. Returns +inf outside the support.
double gpd_neg_loglik(double sigma, double xi, std::span<const double> excesses);

/// Maximum-likelihood (sigma, xi) for positive excesses; the returned fit has u = 0.
///
/// Nelder-Mead over (log sigma, xi) starting at (mean excess, -0.1), with sigma
/// clamped to [1e-8, 1e8] * max excess and xi clamped to `shape` inside the
/// objective. The xi = 0 fit sigma = mean excess competes with the search and
/// the lower negative log-likelihood wins. Identical excesses short-circuit to
/// xi = -1, sigma = the common value.
GpdFit fit_gpd_excesses(std::span<const double> excesses, ShapeRange shape);

/// Maximum-likelihood GPD fit of the upper (1 - beta) tail with xi restricted to `shape`.
GpdFit fit_gpd(std::span<const double> sample, double beta, ShapeRange shape);

/// Fit with the shape constrained to [-5, 0].
GpdFit fit_gpd_constrained(std::span<const double> surprisals, double beta);

/// (1 - beta) times the GPD survival of the exceedance; 1 - beta at or below the threshold.
double surprisal_probability(double s_loo, const GpdFit& fit);

}  // namespace lookout
