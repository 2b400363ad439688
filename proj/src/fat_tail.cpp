#include "lookout/fat_tail.hpp"

#include "lookout/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lookout {

namespace {

constexpr double kTableStart = 1e-8;
constexpr int kTablePoints = 8000;

}  // namespace

double unit_sphere_area(int m) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m);
}

RadialTailLaw::RadialTailLaw(int m) : m_(m) {
  if (m < 3) throw std::invalid_argument("fat-tail law requires dimension m >= 3");
  auto density = [m](double r) { return std::pow(r, m - 1) / (1.0 + std::pow(r, m + 1)); };

  radius_.reserve(kTablePoints + 1);
  cumulative_.reserve(kTablePoints + 1);
  radius_.push_back(0.0);
  cumulative_.push_back(0.0);
  // Below kTableStart the density is r^{m-1} to working precision.
  radius_.push_back(kTableStart);
  cumulative_.push_back(std::pow(kTableStart, m) / m);

  const double log_lo = std::log(kTableStart);
  const double log_step = (std::log(kTableRadius) - log_lo) / (kTablePoints - 1);
  for (int k = 1; k < kTablePoints; ++k) {
    const double a = radius_.back();
    const double b = k + 1 == kTablePoints ? kTableRadius : std::exp(log_lo + k * log_step);
    const double mid = 0.5 * (a + b);
    const double piece = (b - a) / 6.0 * (density(a) + 4.0 * density(mid) + density(b));
    radius_.push_back(b);
    cumulative_.push_back(cumulative_.back() + piece);
  }
  normalizer_ = cumulative_.back() + 1.0 / kTableRadius;
}

double RadialTailLaw::density_constant() const { return 1.0 / (unit_sphere_area(m_) * normalizer_); }

double RadialTailLaw::cdf(double r) const {
  if (r <= 0.0) return 0.0;
  if (r >= kTableRadius) return 1.0 - 1.0 / (normalizer_ * r);
  const auto it = std::upper_bound(radius_.begin(), radius_.end(), r);
  const auto hi = static_cast<std::size_t>(it - radius_.begin());
  const std::size_t lo = hi - 1;
  const double t = (r - radius_[lo]) / (radius_[hi] - radius_[lo]);
  return (cumulative_[lo] + t * (cumulative_[hi] - cumulative_[lo])) / normalizer_;
}

double RadialTailLaw::inverse_cdf(double u) const {
  if (!(u >= 0.0 && u < 1.0)) throw std::invalid_argument("inverse_cdf: u outside [0, 1)");
  const double target = u * normalizer_;
  if (target >= cumulative_.back()) return 1.0 / (normalizer_ * (1.0 - u));
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), target);
  const auto hi = static_cast<std::size_t>(it - cumulative_.begin());
  const std::size_t lo = hi - 1;
  const double t = (target - cumulative_[lo]) / (cumulative_[hi] - cumulative_[lo]);
  return radius_[lo] + t * (radius_[hi] - radius_[lo]);
}

DataMatrix sample_fat_tail(Eigen::Index n, const RadialTailLaw& law, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_fat_tail: n must be positive");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  const int m = law.dim();
  DataMatrix out(n, m);
  Eigen::VectorXd direction(m);
  for (Eigen::Index i = 0; i < n; ++i) {
    double norm = 0.0;
    do {
      for (int k = 0; k < m; ++k) direction(k) = normal(rng);
      norm = direction.norm();
    } while (norm == 0.0);
    const double r = law.inverse_cdf(uniform(rng));
    out.row(i) = (r / norm) * direction.transpose();
  }
  return out;
}

DataMatrix sample_fat_tail(Eigen::Index n, int m, std::uint64_t seed) {
  return sample_fat_tail(n, RadialTailLaw(m), seed);
}

DataMatrix sample_gaussian(Eigen::Index n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw std::invalid_argument("sample_gaussian: empty shape");
  Rng rng(seed);
  std::normal_distribution<double> normal;
  DataMatrix out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (int k = 0; k < m; ++k) out(i, k) = normal(rng);
  }
  return out;
}

}  // namespace lookout
