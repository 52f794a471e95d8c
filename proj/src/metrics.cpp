#include "drsit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "drsit/error.hpp"

namespace drsit {

double auroc(std::span<const double> scores, std::span<const bool> labels) {
  if (scores.size() != labels.size()) throw Error(ErrorKind::ShapeMismatch, "scores and labels differ in length");
  const std::size_t n = scores.size();
  std::size_t positives = 0;
  for (bool l : labels) positives += l ? 1 : 0;
  const std::size_t negatives = n - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorKind::DegenerateLabels, "AUROC needs at least one positive and one negative label");
  }
  for (double s : scores)
    if (!std::isfinite(s)) throw Error(ErrorKind::DomainError, "AUROC scores must be finite");

  // Rank-sum form: tied scores share their average rank (doubled to stay integral).
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  double positive_rank_sum2 = 0.0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && scores[order[j + 1]] == scores[order[i]]) ++j;
    const double rank2 = static_cast<double>(i + 1 + j + 1);  // 2 * average 1-based rank
    for (std::size_t q = i; q <= j; ++q)
      if (labels[order[q]]) positive_rank_sum2 += rank2;
    i = j + 1;
  }
  const double p = static_cast<double>(positives);
  const double u = positive_rank_sum2 / 2.0 - p * (p + 1.0) / 2.0;
  return u / (p * static_cast<double>(negatives));
}

ConfusionMetrics confusion_metrics(std::span<const bool> selected, std::span<const bool> labels) {
  if (selected.size() != labels.size()) throw Error(ErrorKind::ShapeMismatch, "selected and labels differ in length");
  if (selected.empty()) throw Error(ErrorKind::ShapeMismatch, "confusion metrics need at least one entry");
  ConfusionMetrics c;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (selected[i] && labels[i]) ++c.tp;
    else if (selected[i]) ++c.fp;
    else if (labels[i]) ++c.fn;
    else ++c.tn;
  }
  const double tp = static_cast<double>(c.tp);
  const double errors = static_cast<double>(c.fp + c.fn);
  c.accuracy = static_cast<double>(c.tp + c.tn) / static_cast<double>(selected.size());
  c.f1 = (c.tp + c.fp + c.fn == 0) ? 1.0 : 2.0 * tp / (2.0 * tp + errors);
  c.csi = (c.tp + c.fp + c.fn == 0) ? 1.0 : tp / (tp + errors);
  return c;
}

}  // namespace drsit
