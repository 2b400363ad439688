#pragma once

#include "lookout/types.hpp"

#include <cstdint>
#include <vector>

namespace lookout {

/// Surface area of the unit sphere in R^m (s_{m-1}).
double unit_sphere_area(int m);

/// Radial law of the isotropic density c_m / (1 + |x|^{m+1}) on R^m, m >= 3.
///
/// The radius has density proportional to r^{m-1} / (1 + r^{m+1}). Its CDF is
/// tabulated by Simpson quadrature on a log-spaced grid up to kTableRadius and
/// continued beyond it with the r^{-2} asymptotic tail, so the survival there
/// is S(r) = S(kTableRadius) * kTableRadius / r.
class RadialTailLaw {
 public:
  static constexpr double kTableRadius = 1e6;

  explicit RadialTailLaw(int m);

  int dim() const { return m_; }
  /// Integral of r^{m-1} / (1 + r^{m+1}) over (0, inf), by quadrature.
  double normalizer() const { return normalizer_; }
  /// Density constant c_m = 1 / (s_{m-1} * normalizer).
  double density_constant() const;

  double cdf(double r) const;
  double inverse_cdf(double u) const;

 private:
  int m_;
  std::vector<double> radius_;
  std::vector<double> cumulative_;  // unnormalized
  double normalizer_ = 0.0;
};

DataMatrix sample_fat_tail(Eigen::Index n, int m, std::uint64_t seed);

/// Same law with a prebuilt radial table.
DataMatrix sample_fat_tail(Eigen::Index n, const RadialTailLaw& law, std::uint64_t seed);

DataMatrix sample_gaussian(Eigen::Index n, int m, std::uint64_t seed);

}  // namespace lookout
