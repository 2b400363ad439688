#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lookout {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }
};

ConfusionCounts confusion(const std::vector<bool>& flags, const std::vector<bool>& labels);

// Ratios with a zero denominator evaluate to 0.
double true_positive_rate(const ConfusionCounts& c);
double false_positive_rate(const ConfusionCounts& c);
double fmeasure(const ConfusionCounts& c);
double gmean(const ConfusionCounts& c);

/// Area under the ROC curve for scores where LOWER means more anomalous:
/// P(score of a positive < score of a negative), ties counted one half.
double roc_auc(std::span<const double> scores, const std::vector<bool>& labels);

}  // namespace lookout
