#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace lookout {

struct NelderMeadOptions {
  int max_evaluations = 4000;
  double f_tolerance = 1e-12;
  double x_tolerance = 1e-10;
  double initial_step = 0.1;
  int restarts = 3;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int evaluations = 0;
};

/// Derivative-free minimization with the standard reflection, expansion,
/// contraction and shrink moves (coefficients 1, 2, 1/2, 1/2). Each restart
/// rebuilds the simplex around the current best point. The objective may
/// return +inf to mark infeasible points.
template <typename Objective>
NelderMeadResult nelder_mead(Objective&& objective, Eigen::VectorXd start, const NelderMeadOptions& opt = {}) {
  const Eigen::Index dim = start.size();
  NelderMeadResult result{start, objective(start), 1};

  for (int round = 0; round <= opt.restarts; ++round) {
    std::vector<Eigen::VectorXd> simplex(static_cast<std::size_t>(dim + 1), result.x);
    std::vector<double> values(static_cast<std::size_t>(dim + 1), result.value);
    for (Eigen::Index k = 0; k < dim; ++k) {
      auto& vertex = simplex[static_cast<std::size_t>(k + 1)];
      const double step = vertex(k) != 0.0 ? opt.initial_step * std::abs(vertex(k)) : opt.initial_step;
      vertex(k) += step;
      values[static_cast<std::size_t>(k + 1)] = objective(vertex);
      ++result.evaluations;
    }

    std::vector<std::size_t> order(simplex.size());
    while (result.evaluations < opt.max_evaluations) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second = order[order.size() - 2];

      double spread = 0.0;
      for (const auto& v : simplex) spread = std::max(spread, (v - simplex[best]).lpNorm<Eigen::Infinity>());
      const bool flat = std::isfinite(values[worst]) &&
                        std::abs(values[worst] - values[best]) <= opt.f_tolerance * (1.0 + std::abs(values[best]));
      if (flat && spread <= opt.x_tolerance * (1.0 + simplex[best].lpNorm<Eigen::Infinity>())) break;
      if (spread <= 1e-15) break;

      Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
      for (std::size_t k = 0; k < simplex.size(); ++k) {
        if (k != worst) centroid += simplex[k];
      }
      centroid /= static_cast<double>(dim);

      const Eigen::VectorXd reflected = centroid + (centroid - simplex[worst]);
      const double f_reflected = objective(reflected);
      ++result.evaluations;

      if (f_reflected < values[best]) {
        const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - simplex[worst]);
        const double f_expanded = objective(expanded);
        ++result.evaluations;
        if (f_expanded < f_reflected) {
          simplex[worst] = expanded;
          values[worst] = f_expanded;
        } else {
          simplex[worst] = reflected;
          values[worst] = f_reflected;
        }
        continue;
      }
      if (f_reflected < values[second]) {
        simplex[worst] = reflected;
        values[worst] = f_reflected;
        continue;
      }

      const bool outside = f_reflected < values[worst];
      const Eigen::VectorXd contracted =
          outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid))
                  : Eigen::VectorXd(centroid + 0.5 * (simplex[worst] - centroid));
      const double f_contracted = objective(contracted);
      ++result.evaluations;
      if (f_contracted < std::min(f_reflected, values[worst])) {
        simplex[worst] = contracted;
        values[worst] = f_contracted;
        continue;
      }

      for (std::size_t k = 0; k < simplex.size(); ++k) {
        if (k == best) continue;
        simplex[k] = simplex[best] + 0.5 * (simplex[k] - simplex[best]);
        values[k] = objective(simplex[k]);
        ++result.evaluations;
      }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    const auto best_idx = static_cast<std::size_t>(best_it - values.begin());
    const bool improved = *best_it < result.value;
    const double gain = result.value - *best_it;
    if (improved) {
      result.x = simplex[best_idx];
      result.value = *best_it;
    }
    if (!improved || gain <= opt.f_tolerance * (1.0 + std::abs(result.value))) break;
  }
  return result;
}

}  // namespace lookout
