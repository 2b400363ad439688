#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace lookout {

/// Hyndman-Fan type 7 sample quantile of ascending-sorted values, p in [0, 1].
inline double type7_quantile_sorted(std::span<const double> sorted, double p) {
  if (sorted.empty()) throw std::invalid_argument("quantile of empty sample");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile level outside [0, 1]");
  const double h = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

inline double type7_quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  return type7_quantile_sorted(values, p);
}

/// Lower median: element of rank floor((n-1)/2) in ascending order.
inline double lower_median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty sample");
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>((values.size() - 1) / 2);
  std::nth_element(values.begin(), mid, values.end());
  return *mid;
}

/// Ordinary sample median (mean of the two middle values for even counts).
inline double sample_median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median of empty sample");
  const std::size_t n = values.size();
  const auto upper = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), upper, values.end());
  if (n % 2) return *upper;
  const double below = *std::max_element(values.begin(), upper);
  return below + 0.5 * (*upper - below);
}

}  // namespace lookout
