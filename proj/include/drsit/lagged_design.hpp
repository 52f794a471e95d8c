#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "drsit/panel.hpp"

namespace drsit {

struct RowOrigin {
  std::size_t trajectory = 0;
  std::size_t time = 0;

  bool operator==(const RowOrigin&) const = default;
};

/// Regression problem built from a panel at a fixed lag. Column
/// (k - 1) * num_variables + v holds variable v at time T - k for the row
/// whose target is the target variable at time T.
struct LaggedDesign {
  Eigen::MatrixXd features;
  Eigen::VectorXd targets;
  std::size_t lag = 0;
  std::size_t num_variables = 0;
  std::vector<RowOrigin> row_origin;

  std::size_t rows() const { return static_cast<std::size_t>(features.rows()); }
  std::size_t width() const { return static_cast<std::size_t>(features.cols()); }

  /// Column holding variable `variable` lagged by `lag_k` (1-based lag).
  std::size_t column(std::size_t lag_k, std::size_t variable) const;
};

/// The first `lag` steps of every trajectory are context only; no row spans
/// two trajectories.
LaggedDesign build_lagged_design(const Panel& panel, std::size_t target_index, std::size_t lag);

/// All lagged copies of `variable`, in increasing lag order.
std::vector<std::size_t> mask_columns_for(const LaggedDesign& design, std::size_t variable);

/// Rows whose trajectory satisfies the predicate, in design order.
template <typename Pred>
std::vector<std::size_t> rows_where(const LaggedDesign& design, Pred&& pred) {
  std::vector<std::size_t> out;
  for (std::size_t r = 0; r < design.row_origin.size(); ++r) {
    if (pred(design.row_origin[r])) out.push_back(r);
  }
  return out;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows);
Eigen::VectorXd select_rows(const Eigen::VectorXd& v, const std::vector<std::size_t>& rows);
Eigen::MatrixXd drop_columns(const Eigen::MatrixXd& m, const std::vector<std::size_t>& columns);

}  // namespace drsit
