#include "drsit/dml.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <thread>

#include "drsit/error.hpp"
#include "drsit/folds.hpp"
#include "drsit/lagged_design.hpp"
#include "drsit/special_functions.hpp"
#include "drsit/standardizer.hpp"

namespace drsit {

const char* to_string(MaskingMode mode) noexcept {
  switch (mode) {
    case MaskingMode::SurrogateZeroMask: return "surrogate_zero_mask";
    case MaskingMode::Refit: return "refit";
  }
  return "unknown";
}

const char* to_string(RankingMetric metric) noexcept {
  switch (metric) {
    case RankingMetric::StdZ: return "std_z";
    case RankingMetric::AbsT: return "abs_t";
  }
  return "unknown";
}

MaskingMode masking_mode_from_string(const std::string& name) {
  if (name == "surrogate_zero_mask" || name == "surrogate") return MaskingMode::SurrogateZeroMask;
  if (name == "refit") return MaskingMode::Refit;
  throw Error(ErrorKind::InvalidConfig, "unknown masking mode '" + name + "'");
}

RankingMetric ranking_metric_from_string(const std::string& name) {
  if (name == "std_z") return RankingMetric::StdZ;
  if (name == "abs_t") return RankingMetric::AbsT;
  throw Error(ErrorKind::InvalidConfig, "unknown ranking metric '" + name + "'");
}

void DrSitConfig::validate() const {
  if (lag < 1) throw Error(ErrorKind::InvalidConfig, "lag must be >= 1");
  if (k_folds < 2) throw Error(ErrorKind::InvalidConfig, "k_folds must be >= 2");
  if (!(significance_alpha > 0.0 && significance_alpha < 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "significance_alpha must lie in (0, 1)");
  }
  regressor.validate();
}

std::vector<std::size_t> DrSitReport::selected_candidates() const {
  std::vector<std::size_t> out;
  for (const auto& e : edges)
    if (e.selected) out.push_back(e.candidate);
  return out;
}

void compute_psi(ScoreSamples& s) {
  s.psi_full = (2.0 * s.y.array() * s.g_full.array() - s.g_full.array().square()).matrix();
  s.psi_masked = (2.0 * s.y.array() * s.g_masked.array() - s.g_masked.array().square()).matrix();
  s.z = s.psi_full - s.psi_masked;
}

double fold_average(const Eigen::VectorXd& values, const std::vector<std::size_t>& fold, std::size_t k) {
  std::vector<double> sums(k, 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    sums[fold[static_cast<std::size_t>(i)]] += values(i);
    ++counts[fold[static_cast<std::size_t>(i)]];
  }
  double total = 0.0;
  std::size_t used = 0;
  for (std::size_t j = 0; j < k; ++j) {
    if (counts[j] == 0) continue;
    total += sums[j] / static_cast<double>(counts[j]);
    ++used;
  }
  return used == 0 ? 0.0 : total / static_cast<double>(used);
}

namespace {

double sample_std(std::span<const double> z, double mean) {
  const auto [lo, hi] = std::minmax_element(z.begin(), z.end());
  if (*lo == *hi) return 0.0;
  double ss = 0.0;
  for (double v : z) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / static_cast<double>(z.size() - 1));
}

TTestResult t_test_from_moments(double mean, double sd, std::size_t n, double alpha) {
  TTestResult r;
  r.mean = mean;
  r.std = sd;
  if (sd == 0.0) {
    if (mean == 0.0) {
      r.t_stat = 0.0;
      r.p_value = 1.0;
    } else {
      r.t_stat = std::copysign(std::numeric_limits<double>::infinity(), mean);
      r.p_value = 0.0;
    }
  } else {
    r.t_stat = mean / (sd / std::sqrt(static_cast<double>(n)));
    r.p_value = TDist(static_cast<long>(n - 1)).two_sided_p(r.t_stat);
  }
  r.selected = r.p_value < alpha;
  return r;
}

template <typename Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += threads) {
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

/// Design, fold split and per-fold row sets shared by every candidate.
struct CrossFit {
  LaggedDesign design;
  FoldAssignment folds;
  std::vector<std::vector<std::size_t>> train_rows;
  std::vector<std::vector<std::size_t>> held_rows;
  /// Held-out rows concatenated fold by fold; ScoreSamples follow this order.
  std::vector<std::size_t> score_order;
  std::vector<std::size_t> score_fold;
};

CrossFit prepare(const Panel& panel, std::size_t target, const DrSitConfig& config) {
  config.validate();
  panel.validate();
  if (target >= panel.num_variables()) throw Error(ErrorKind::IndexOutOfRange, "target index out of range");
  CrossFit cf;
  cf.design = build_lagged_design(panel, target, config.lag);
  cf.folds = assign_folds(panel.num_trajectories(), config.k_folds, config.seed);
  cf.train_rows.resize(config.k_folds);
  cf.held_rows.resize(config.k_folds);
  for (std::size_t r = 0; r < cf.design.rows(); ++r) {
    const std::size_t f = cf.folds.trajectory_to_fold[cf.design.row_origin[r].trajectory];
    cf.held_rows[f].push_back(r);
    for (std::size_t j = 0; j < config.k_folds; ++j)
      if (j != f) cf.train_rows[j].push_back(r);
  }
  for (std::size_t j = 0; j < config.k_folds; ++j) {
    for (std::size_t r : cf.held_rows[j]) {
      cf.score_order.push_back(r);
      cf.score_fold.push_back(j);
    }
  }
  return cf;
}

struct FoldModels {
  std::vector<Regressor> full;
  std::vector<Eigen::MatrixXd> held_features;
  std::vector<Eigen::VectorXd> g_full;
  std::vector<Standardizer> train_scaling;
};

FoldModels fit_full_models(const CrossFit& cf, const DrSitConfig& config) {
  const std::size_t k = config.k_folds;
  std::vector<std::optional<Regressor>> models(k);
  FoldModels out;
  out.held_features.resize(k);
  out.g_full.resize(k);
  out.train_scaling.resize(k);
  parallel_for(k, config.threads, [&](std::size_t j) {
    const Eigen::MatrixXd train_x = select_rows(cf.design.features, cf.train_rows[j]);
    const Eigen::VectorXd train_y = select_rows(cf.design.targets, cf.train_rows[j]);
    out.train_scaling[j] = fit_standardizer(train_x);
    models[j].emplace(fit_regressor(config.regressor, train_x, train_y, config.standardize));
    out.held_features[j] = select_rows(cf.design.features, cf.held_rows[j]);
    out.g_full[j] = models[j]->predict(out.held_features[j]);
  });
  for (auto& m : models) out.full.push_back(std::move(*m));
  return out;
}

bool candidate_is_degenerate(const CrossFit& cf, const FoldModels& fm, std::size_t candidate) {
  const auto cols = mask_columns_for(cf.design, candidate);
  for (const auto& s : fm.train_scaling) {
    for (std::size_t c : cols)
      if (!s.zero_variance[c]) return false;
  }
  return true;
}

ScoreSamples assemble_scores(const CrossFit& cf, const FoldModels& fm, std::size_t candidate,
                             const DrSitConfig& config) {
  const std::size_t k = config.k_folds;
  const auto masked = mask_columns_for(cf.design, candidate);
  std::vector<Eigen::VectorXd> g_masked(k);
  parallel_for(k, config.threads, [&](std::size_t j) {
    if (config.masking_mode == MaskingMode::SurrogateZeroMask) {
      g_masked[j] = fm.full[j].predict_masked(fm.held_features[j], masked);
    } else {
      const Eigen::MatrixXd train_x = drop_columns(select_rows(cf.design.features, cf.train_rows[j]), masked);
      const Eigen::VectorXd train_y = select_rows(cf.design.targets, cf.train_rows[j]);
      const Regressor reduced = fit_regressor(config.regressor, train_x, train_y, config.standardize);
      g_masked[j] = reduced.predict(drop_columns(fm.held_features[j], masked));
    }
  });

  const auto n = static_cast<Eigen::Index>(cf.score_order.size());
  ScoreSamples s;
  s.k_folds = k;
  s.y.resize(n);
  s.g_full.resize(n);
  s.g_masked.resize(n);
  s.fold = cf.score_fold;
  Eigen::Index pos = 0;
  for (std::size_t j = 0; j < k; ++j) {
    const auto len = static_cast<Eigen::Index>(cf.held_rows[j].size());
    s.y.segment(pos, len) = select_rows(cf.design.targets, cf.held_rows[j]);
    s.g_full.segment(pos, len) = fm.g_full[j];
    s.g_masked.segment(pos, len) = g_masked[j];
    pos += len;
  }
  compute_psi(s);
  if (!s.psi_full.allFinite() || !s.psi_masked.allFinite()) {
    throw Error(ErrorKind::NonFiniteScore, "non-finite doubly-robust score for candidate " + std::to_string(candidate));
  }
  return s;
}

void check_candidate(const Panel& panel, std::size_t target, std::size_t candidate) {
  if (candidate >= panel.num_variables()) throw Error(ErrorKind::IndexOutOfRange, "candidate index out of range");
  if (candidate == target) throw Error(ErrorKind::IndexOutOfRange, "candidate must differ from the target");
}

}  // namespace

TTestResult paired_t_test(std::span<const double> z, double alpha) {
  if (z.size() < 2) throw Error(ErrorKind::TooFewSamples, "paired t-test needs at least 2 samples");
  double mean = 0.0;
  for (double v : z) mean += v;
  mean /= static_cast<double>(z.size());
  return t_test_from_moments(mean, sample_std(z, mean), z.size(), alpha);
}

double ranking_score(const ScoreSamples& samples, RankingMetric metric) {
  if (samples.size() < 2) throw Error(ErrorKind::TooFewSamples, "ranking needs at least 2 samples");
  std::span<const double> z(samples.z.data(), samples.size());
  switch (metric) {
    case RankingMetric::StdZ: {
      const double mean = samples.z.mean();
      return sample_std(z, mean);
    }
    case RankingMetric::AbsT: return std::abs(paired_t_test(z, 0.5).t_stat);
  }
  return 0.0;
}

ScoreSamples compute_score_samples(const Panel& panel, std::size_t target, std::size_t candidate,
                                   const DrSitConfig& config) {
  check_candidate(panel, target, candidate);
  const CrossFit cf = prepare(panel, target, config);
  const FoldModels fm = fit_full_models(cf, config);
  if (candidate_is_degenerate(cf, fm, candidate)) {
    throw Error(ErrorKind::DegenerateCandidate, "every lagged column of '" + panel.variable_names[candidate] +
                                                    "' is constant in every training fold");
  }
  return assemble_scores(cf, fm, candidate, config);
}

DrSitReport dr_sit(const Panel& panel, std::size_t target, const DrSitConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const CrossFit cf = prepare(panel, target, config);
  const FoldModels fm = fit_full_models(cf, config);

  DrSitReport report;
  report.target_index = target;
  report.target_name = panel.variable_names[target];
  report.variable_names = panel.variable_names;
  report.config = config;

  for (std::size_t j = 0; j < config.k_folds; ++j) {
    FoldDiagnostics d;
    d.fold = j;
    d.train_rows = cf.train_rows[j].size();
    d.held_out_rows = cf.held_rows[j].size();
    const Eigen::VectorXd y = select_rows(cf.design.targets, cf.held_rows[j]);
    d.held_out_rmse = y.size() == 0 ? 0.0 : std::sqrt((y - fm.g_full[j]).squaredNorm() / static_cast<double>(y.size()));
    report.folds.push_back(d);
  }

  for (std::size_t c = 0; c < panel.num_variables(); ++c) {
    if (c == target) continue;
    EdgeStatistics e;
    e.candidate = c;
    e.candidate_name = panel.variable_names[c];
    e.n = cf.score_order.size();
    if (candidate_is_degenerate(cf, fm, c)) {
      e.degenerate = true;
      report.edges.push_back(e);
      continue;
    }
    const ScoreSamples s = assemble_scores(cf, fm, c, config);
    if (s.size() < 2) throw Error(ErrorKind::TooFewSamples, "fewer than 2 held-out rows");
    e.theta_full = fold_average(s.psi_full, s.fold, s.k_folds);
    e.theta_masked = fold_average(s.psi_masked, s.fold, s.k_folds);
    e.mean_z = e.theta_full - e.theta_masked;
    e.std_z = sample_std(std::span<const double>(s.z.data(), s.size()), s.z.mean());
    const TTestResult t = t_test_from_moments(e.mean_z, e.std_z, e.n, config.significance_alpha);
    e.t_stat = t.t_stat;
    e.p_value = t.p_value;
    e.selected = t.selected;
    e.ranking_score = config.ranking_metric == RankingMetric::StdZ ? e.std_z : std::abs(e.t_stat);
    report.edges.push_back(e);
  }
  report.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<DrSitReport> discover_all(const Panel& panel, const DrSitConfig& config) {
  panel.validate();
  std::vector<DrSitReport> out;
  out.reserve(panel.num_variables());
  for (std::size_t target = 0; target < panel.num_variables(); ++target) {
    try {
      out.push_back(dr_sit(panel, target, config));
    } catch (const Error& e) {
      throw Error(e.kind(), "target '" + panel.variable_names[target] + "': " + e.what());
    }
  }
  return out;
}

}  // namespace drsit
