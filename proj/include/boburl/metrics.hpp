#ifndef BOBURL_METRICS_HPP
#define BOBURL_METRICS_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "boburl/datasets.hpp"

namespace boburl {

struct ScoredLabel {
  double p_malicious = 0.0;
  Label label = Label::kBenign;
};

// Positive class = malicious.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const { return tp + fp + tn + fn; }
};

// A degenerate flag marks a value whose denominator was zero; the value
// itself is reported as 0 then.
struct MetricsSummary {
  double accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f_measure = 0.0;
  bool precision_degenerate = false;
  bool recall_degenerate = false;
  bool f_degenerate = false;
};

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

// Points start at (0,0), end at (1,1), both coordinates non-decreasing;
// auc is the trapezoidal integral of the stored points.
struct RocCurve {
  std::vector<RocPoint> points;
  double auc = 0.0;
};

// Threshold 0.5; exactly 0.5 predicts benign, matching the trainer's
// tie rule.
ConfusionMatrix confusion(std::span<const ScoredLabel> scores);

MetricsSummary summary(const ConfusionMatrix& cm);

// The same counts with benign treated as the positive class.
ConfusionMatrix swap_classes(const ConfusionMatrix& cm);

// Threshold sweep over every distinct score, descending; tied scores move
// as one block. Throws DataError unless both classes are present.
RocCurve roc(std::span<const ScoredLabel> scores);

}  // namespace boburl

#endif  // BOBURL_METRICS_HPP
