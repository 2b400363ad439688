#include "lookout/metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

using namespace lookout;

namespace {

std::span<const double> view(const std::vector<double>& v) { return {v.data(), v.size()}; }

}  // namespace

TEST_CASE("confusion counts") {
  auto c = confusion({true, false, false}, {true, false, false});
  CHECK(c.tp == 1);
  CHECK(c.tn == 2);
  CHECK(c.fp + c.fn == 0);

  c = confusion({false, false, false, false}, {true, false, true, false});
  CHECK(c.fn == 2);
  CHECK(c.tn == 2);

  c = confusion({true, true, false, false}, {true, false, true, false});
  CHECK(c.tp == 1);
  CHECK(c.fp == 1);
  CHECK(c.fn == 1);
  CHECK(c.tn == 1);
  CHECK(c.total() == 4);

  CHECK_THROWS_AS(confusion({true}, {true, false}), std::invalid_argument);
}

TEST_CASE("fmeasure and gmean") {
  CHECK(fmeasure({5, 0, 0, 0}) == 1.0);
  CHECK(fmeasure({0, 3, 4, 2}) == 0.0);
  CHECK(fmeasure({0, 0, 0, 0}) == 0.0);
  CHECK(fmeasure({1, 1, 0, 1}) == doctest::Approx(0.5));

  CHECK(gmean({3, 0, 7, 0}) == 1.0);
  CHECK(gmean({0, 0, 7, 3}) == 0.0);
  CHECK(gmean({1, 1, 3, 1}) == doctest::Approx(std::sqrt(0.5 * 0.75)));
  CHECK(gmean({1, 1, 3, 1}) == doctest::Approx(0.6124).epsilon(1e-4));
  CHECK(gmean({0, 0, 0, 0}) == 0.0);

  CHECK(true_positive_rate({2, 0, 0, 2}) == 0.5);
  CHECK(false_positive_rate({0, 1, 3, 0}) == 0.25);
}

TEST_CASE("roc_auc fixed cases") {
  CHECK(roc_auc(view({0, 0, 1, 1, 1}), {true, true, false, false, false}) == 1.0);
  CHECK(roc_auc(view({0.3, 0.3, 0.3, 0.3}), {true, false, true, false}) == 0.5);
  CHECK(roc_auc(view({0.1, 0.4, 0.35, 0.8}), {true, false, true, false}) == 1.0);
  CHECK(roc_auc(view({1, 1, 0, 0}), {true, true, false, false}) == 0.0);
  CHECK_THROWS_AS(roc_auc(view({1, 2}), {true, true}), std::invalid_argument);
  CHECK_THROWS_AS(roc_auc(view({1, 2}), {true}), std::invalid_argument);
}

TEST_CASE("roc_auc agrees with pair counting and its symmetries") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<int> size(2, 200), level(0, 9);
  std::bernoulli_distribution coin(0.3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = size(rng);
    std::vector<double> scores(static_cast<std::size_t>(n));
    std::vector<bool> labels(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      scores[static_cast<std::size_t>(i)] = 0.1 * level(rng);  // many ties
      labels[static_cast<std::size_t>(i)] = coin(rng);
    }
    labels[0] = true;
    labels[1] = false;
    const double auc = roc_auc(view(scores), labels);
    CHECK(std::abs(auc - oracle::pairwise_auc(scores, labels)) <= 1e-12);

    std::vector<double> transformed, reversed;
    for (double s : scores) {
      transformed.push_back(std::exp(3.0 * s) - 7.0);
      reversed.push_back(-s);
    }
    CHECK(std::abs(roc_auc(view(transformed), labels) - auc) <= 1e-12);
    CHECK(std::abs(roc_auc(view(reversed), labels) - (1.0 - auc)) <= 1e-12);
  }
}
