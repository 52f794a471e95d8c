#pragma once

#include <cstddef>
#include <span>

namespace drsit {

/// Mann-Whitney AUROC with half credit for ties. Throws DegenerateLabels
/// unless both classes are present.
double auroc(std::span<const double> scores, std::span<const bool> labels);

struct ConfusionMetrics {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  double accuracy = 0.0;
  double f1 = 0.0;
  double csi = 0.0;
};

/// F1 and CSI are 1 when there is nothing to find and nothing was claimed.
ConfusionMetrics confusion_metrics(std::span<const bool> selected, std::span<const bool> labels);

}  // namespace drsit
