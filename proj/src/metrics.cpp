#include "lookout/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lookout {

namespace {

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

ConfusionCounts confusion(const std::vector<bool>& flags, const std::vector<bool>& labels) {
  if (flags.size() != labels.size()) throw std::invalid_argument("confusion: length mismatch");
  ConfusionCounts c;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (labels[i]) {
      flags[i] ? ++c.tp : ++c.fn;
    } else {
      flags[i] ? ++c.fp : ++c.tn;
    }
  }
  return c;
}

double true_positive_rate(const ConfusionCounts& c) { return ratio(c.tp, c.tp + c.fn); }

double false_positive_rate(const ConfusionCounts& c) { return ratio(c.fp, c.fp + c.tn); }

double fmeasure(const ConfusionCounts& c) {
  if (c.tp == 0) return 0.0;
  const double precision = ratio(c.tp, c.tp + c.fp);
  const double recall = ratio(c.tp, c.tp + c.fn);
  return 2.0 * precision * recall / (precision + recall);
}

double gmean(const ConfusionCounts& c) {
  return std::sqrt(ratio(c.tp, c.tp + c.fn) * ratio(c.tn, c.tn + c.fp));
}

double roc_auc(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("roc_auc: length mismatch");
  const std::size_t n = scores.size();
  const auto positives = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), true));
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) throw std::invalid_argument("roc_auc: need both classes");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Mid-ranks (1-based) of the negatives: each counts the positives scored
  // strictly below it plus half of the tied positives.
  double negative_rank_sum = 0.0;
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start;
    while (end < n && scores[order[end]] == scores[order[start]]) ++end;
    const double mid_rank = 0.5 * static_cast<double>(start + 1 + end);
    for (std::size_t k = start; k < end; ++k) {
      if (!labels[order[k]]) negative_rank_sum += mid_rank;
    }
    start = end;
  }
  const double nn = static_cast<double>(negatives);
  const double u = negative_rank_sum - nn * (nn + 1.0) / 2.0;
  return u / (static_cast<double>(positives) * nn);
}

}  // namespace lookout
