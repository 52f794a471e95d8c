#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "drsit/panel.hpp"
#include "drsit/regressor.hpp"

namespace drsit {

enum class MaskingMode { SurrogateZeroMask, Refit };
enum class RankingMetric { StdZ, AbsT };

const char* to_string(MaskingMode mode) noexcept;
const char* to_string(RankingMetric metric) noexcept;
MaskingMode masking_mode_from_string(const std::string& name);
RankingMetric ranking_metric_from_string(const std::string& name);

struct DrSitConfig {
  std::size_t lag = 2;
  std::size_t k_folds = 5;
  double significance_alpha = 0.05;
  MaskingMode masking_mode = MaskingMode::SurrogateZeroMask;
  RegressorSpec regressor;
  RankingMetric ranking_metric = RankingMetric::StdZ;
  std::uint64_t seed = 0;
  bool standardize = true;
  /// Worker threads for per-fold fitting; 0 picks the hardware concurrency.
  std::size_t threads = 1;

  void validate() const;
};

/// Per held-out design row doubly-robust scores for one candidate.
/// psi = m(V; g) + alpha(X) (y - g(X)) with m(V; g) = y g and alpha = g,
/// which is 2 y g - g^2. z = psi_full - psi_masked.
struct ScoreSamples {
  Eigen::VectorXd y;
  Eigen::VectorXd g_full;
  Eigen::VectorXd g_masked;
  Eigen::VectorXd psi_full;
  Eigen::VectorXd psi_masked;
  Eigen::VectorXd z;
  std::vector<std::size_t> fold;
  std::size_t k_folds = 0;

  std::size_t size() const { return static_cast<std::size_t>(z.size()); }
};

/// Fills psi_full, psi_masked and z from y, g_full and g_masked.
void compute_psi(ScoreSamples& samples);

/// k^{-1} sum_j mean over fold j of `values`.
double fold_average(const Eigen::VectorXd& values, const std::vector<std::size_t>& fold, std::size_t k);

struct TTestResult {
  double mean = 0.0;
  double std = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
  bool selected = false;
};

/// Two-sided one-sample t-test of zero mean on paired differences z.
TTestResult paired_t_test(std::span<const double> z, double alpha);

double ranking_score(const ScoreSamples& samples, RankingMetric metric);

struct EdgeStatistics {
  std::size_t candidate = 0;
  std::string candidate_name;
  std::size_t n = 0;
  double theta_full = 0.0;
  double theta_masked = 0.0;
  double mean_z = 0.0;
  double std_z = 0.0;
  double t_stat = 0.0;
  double p_value = 1.0;
  double ranking_score = 0.0;
  bool selected = false;
  /// Every lagged column of the candidate was constant in every training fold.
  bool degenerate = false;
};

struct FoldDiagnostics {
  std::size_t fold = 0;
  std::size_t train_rows = 0;
  std::size_t held_out_rows = 0;
  /// RMSE of the full-model predictions on the held-out rows.
  double held_out_rmse = 0.0;
};

struct DrSitReport {
  std::size_t target_index = 0;
  std::string target_name;
  std::vector<std::string> variable_names;
  DrSitConfig config;
  std::vector<EdgeStatistics> edges;
  std::vector<FoldDiagnostics> folds;
  double elapsed_seconds = 0.0;
  /// Invocation-level options (input paths, command flags) echoed verbatim.
  std::vector<std::pair<std::string, std::string>> run_echo;

  std::vector<std::size_t> selected_candidates() const;
};

/// Cross-fitted scores for a single candidate of a single target.
ScoreSamples compute_score_samples(const Panel& panel, std::size_t target, std::size_t candidate,
                                   const DrSitConfig& config);

/// Tests every other variable as a Granger cause of `target`.
DrSitReport dr_sit(const Panel& panel, std::size_t target, const DrSitConfig& config);

/// Runs dr_sit once per variable; the union of selections is the summary graph.
std::vector<DrSitReport> discover_all(const Panel& panel, const DrSitConfig& config);

}  // namespace drsit
