#include "boburl/metrics.hpp"

#include <algorithm>

#include "boburl/errors.hpp"

namespace boburl {

ConfusionMatrix confusion(std::span<const ScoredLabel> scores) {
  ConfusionMatrix cm;
  for (const ScoredLabel& s : scores) {
    bool predicted_malicious = s.p_malicious > 0.5;
    bool is_malicious = s.label == Label::kMalicious;
    if (predicted_malicious) {
      is_malicious ? ++cm.tp : ++cm.fp;
    } else {
      is_malicious ? ++cm.fn : ++cm.tn;
    }
  }
  return cm;
}

MetricsSummary summary(const ConfusionMatrix& cm) {
  if (cm.total() == 0) throw DataError("summary: empty confusion matrix");
  MetricsSummary s;
  s.accuracy = static_cast<double>(cm.tp + cm.tn) /
               static_cast<double>(cm.total());
  if (cm.tp + cm.fp == 0) {
    s.precision_degenerate = true;
  } else {
    s.precision = static_cast<double>(cm.tp) /
                  static_cast<double>(cm.tp + cm.fp);
  }
  if (cm.tp + cm.fn == 0) {
    s.recall_degenerate = true;
  } else {
    s.recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
  }
  if (s.precision + s.recall == 0.0) {
    s.f_degenerate = true;
  } else {
    s.f_measure = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

ConfusionMatrix swap_classes(const ConfusionMatrix& cm) {
  return {cm.tn, cm.fn, cm.tp, cm.fp};
}

RocCurve roc(std::span<const ScoredLabel> scores) {
  std::uint64_t positives = 0;
  std::uint64_t negatives = 0;
  for (const ScoredLabel& s : scores) {
    s.label == Label::kMalicious ? ++positives : ++negatives;
  }
  if (positives == 0 || negatives == 0)
    throw DataError("roc: need at least one positive and one negative label");

  std::vector<ScoredLabel> sorted(scores.begin(), scores.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const ScoredLabel& a, const ScoredLabel& b) {
              return a.p_malicious > b.p_malicious;
            });

  RocCurve curve;
  curve.points.push_back({0.0, 0.0});
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::size_t i = 0;
  while (i < sorted.size()) {
    // One point per distinct score; ties advance as a block.
    double score = sorted[i].p_malicious;
    while (i < sorted.size() && sorted[i].p_malicious == score) {
      sorted[i].label == Label::kMalicious ? ++tp : ++fp;
      ++i;
    }
    curve.points.push_back({static_cast<double>(fp) /
                                static_cast<double>(negatives),
                            static_cast<double>(tp) /
                                static_cast<double>(positives)});
  }

  double area = 0.0;
  for (std::size_t k = 1; k < curve.points.size(); ++k) {
    const RocPoint& a = curve.points[k - 1];
    const RocPoint& b = curve.points[k];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  curve.auc = area;
  return curve;
}

}  // namespace boburl
