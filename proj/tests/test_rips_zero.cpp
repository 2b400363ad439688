#include "lookout/rips_zero.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace lookout;

TEST_CASE("death diameters of tiny clouds") {
  Eigen::MatrixXd two(2, 2);
  two << 0, 0, 3, 0;
  CHECK(death_diameters(two).values == std::vector<double>{3.0});

  Eigen::MatrixXd line(4, 1);
  line << 0, 1, 3, 7;
  CHECK(death_diameters(line).values == std::vector<double>{1.0, 2.0, 4.0});
  CHECK(oracle::kruskal_weights(line) == std::vector<double>{1.0, 2.0, 4.0});

  CHECK(death_diameters(Eigen::MatrixXd::Ones(5, 3)).values == std::vector<double>(4, 0.0));
  CHECK_THROWS_WITH(death_diameters(Eigen::MatrixXd::Ones(1, 3)), doctest::Contains("need at least two points"));
}

TEST_CASE("Prim matches brute-force Kruskal exactly") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> size(2, 12), dim(1, 4);
  for (int trial = 0; trial < 300; ++trial) {
    const Eigen::MatrixXd x = oracle::normal_cloud(rng, size(rng), dim(rng));
    const DeathDiameters d = death_diameters(x);
    REQUIRE(d.size() == static_cast<std::size_t>(x.rows() - 1));
    CHECK(d.values == oracle::kruskal_weights(x));
  }
}

TEST_CASE("k-d tree Boruvka agrees with dense Prim") {
  std::mt19937_64 rng(23);
  for (int m : {1, 2, 3, 5}) {
    for (Eigen::Index n : {2, 3, 17, 200, 1500}) {
      Eigen::MatrixXd x = oracle::normal_cloud(rng, n, m);
      CHECK(death_diameters_kdtree(x).values == death_diameters(x).values);
    }
  }
  // Ties and duplicates: integer lattice with repeated points.
  Eigen::MatrixXd lattice(300, 2);
  for (Eigen::Index i = 0; i < 300; ++i) lattice.row(i) << static_cast<double>(i % 7), static_cast<double>((i / 7) % 5);
  CHECK(death_diameters_kdtree(lattice).values == death_diameters(lattice).values);
  CHECK(death_diameters_kdtree(lattice).values == oracle::kruskal_weights(lattice));
}

TEST_CASE("death diameters scale and isometry") {
  std::mt19937_64 rng(4);
  const Eigen::MatrixXd x = oracle::normal_cloud(rng, 60, 3);
  const auto base = death_diameters(x).values;
  const auto scaled = death_diameters(2.5 * x).values;
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(scaled[i] == doctest::Approx(2.5 * base[i]).epsilon(1e-14));

  const Eigen::Matrix3d rot = Eigen::AngleAxisd(0.7, Eigen::Vector3d(1, 2, 3).normalized()).toRotationMatrix();
  const Eigen::MatrixXd moved = (x * rot.transpose()).rowwise() + Eigen::RowVector3d(5, -1, 2);
  const auto iso = death_diameters(moved).values;
  for (std::size_t i = 0; i < base.size(); ++i) CHECK(std::abs(iso[i] - base[i]) <= 1e-9 * base[i]);
}

TEST_CASE("quantile_diameter is type-7") {
  const DeathDiameters d{{1.0, 2.0, 4.0}};
  CHECK(quantile_diameter(d, 0.5) == 2.0);
  CHECK(quantile_diameter(d, 0.98) == doctest::Approx(3.92).epsilon(1e-15));
  CHECK(quantile_diameter(DeathDiameters{{0.7, 0.7, 0.7, 0.7}}, 0.31) == 0.7);
  CHECK_THROWS_AS(quantile_diameter(d, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(quantile_diameter(d, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(quantile_diameter(DeathDiameters{}, 0.5), std::invalid_argument);

  std::mt19937_64 rng(8);
  const DeathDiameters deaths = death_diameters(oracle::normal_cloud(rng, 40, 2));
  double prev = 0.0;
  for (double g = 0.01; g < 1.0; g += 0.01) {
    const double q = quantile_diameter(deaths, g);
    CHECK(q >= prev);
    prev = q;
  }
}

TEST_CASE("max_gap_diameter picks the lower end of the largest gap") {
  CHECK(max_gap_diameter(DeathDiameters{{1.0, 2.0, 4.0}}) == 2.0);
  CHECK(max_gap_diameter(DeathDiameters{{1.0, 2.0, 3.0, 100.0}}) == 3.0);
  CHECK(max_gap_diameter(DeathDiameters{{1.0, 3.0, 5.0}}) == 1.0);
  CHECK_THROWS_AS(max_gap_diameter(DeathDiameters{{1.0}}), std::invalid_argument);

  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    const DeathDiameters d = death_diameters(oracle::normal_cloud(rng, 30, 2));
    const double v = max_gap_diameter(d);
    CHECK(std::find(d.values.begin(), d.values.end(), v) != d.values.end());
  }
}
