#include "drsit/lagged_design.hpp"

#include <algorithm>

#include "drsit/error.hpp"

namespace drsit {

std::size_t LaggedDesign::column(std::size_t lag_k, std::size_t variable) const {
  if (lag_k < 1 || lag_k > lag || variable >= num_variables) {
    throw Error(ErrorKind::IndexOutOfRange, "lag/variable outside the design layout");
  }
  return (lag_k - 1) * num_variables + variable;
}

LaggedDesign build_lagged_design(const Panel& panel, std::size_t target_index, std::size_t lag) {
  if (panel.trajectories.empty()) throw Error(ErrorKind::EmptyPanel, "panel has no trajectories");
  const std::size_t width = panel.num_variables();
  if (target_index >= width) throw Error(ErrorKind::IndexOutOfRange, "target index out of range");
  if (lag == 0) throw Error(ErrorKind::InvalidConfig, "lag must be positive");
  if (lag >= panel.min_length()) {
    throw Error(ErrorKind::LagTooLarge, "lag " + std::to_string(lag) + " needs trajectories longer than " +
                                            std::to_string(lag) + " steps; shortest has " +
                                            std::to_string(panel.min_length()));
  }

  std::size_t n = 0;
  for (const auto& t : panel.trajectories) n += static_cast<std::size_t>(t.rows()) - lag;

  LaggedDesign design;
  design.lag = lag;
  design.num_variables = width;
  design.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(lag * width));
  design.targets.resize(static_cast<Eigen::Index>(n));
  design.row_origin.reserve(n);

  Eigen::Index row = 0;
  for (std::size_t r = 0; r < panel.trajectories.size(); ++r) {
    const auto& traj = panel.trajectories[r];
    for (Eigen::Index t = static_cast<Eigen::Index>(lag); t < traj.rows(); ++t, ++row) {
      for (std::size_t k = 1; k <= lag; ++k) {
        design.features.block(row, static_cast<Eigen::Index>((k - 1) * width), 1, static_cast<Eigen::Index>(width)) =
            traj.row(t - static_cast<Eigen::Index>(k));
      }
      design.targets(row) = traj(t, static_cast<Eigen::Index>(target_index));
      design.row_origin.push_back({r, static_cast<std::size_t>(t)});
    }
  }
  return design;
}

std::vector<std::size_t> mask_columns_for(const LaggedDesign& design, std::size_t variable) {
  if (variable >= design.num_variables) {
    throw Error(ErrorKind::IndexOutOfRange, "variable " + std::to_string(variable) + " outside design");
  }
  std::vector<std::size_t> cols;
  cols.reserve(design.lag);
  for (std::size_t k = 1; k <= design.lag; ++k) cols.push_back((k - 1) * design.num_variables + variable);
  return cols;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m, const std::vector<std::size_t>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
  return out;
}

Eigen::VectorXd select_rows(const Eigen::VectorXd& v, const std::vector<std::size_t>& rows) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) out(static_cast<Eigen::Index>(i)) = v(static_cast<Eigen::Index>(rows[i]));
  return out;
}

Eigen::MatrixXd drop_columns(const Eigen::MatrixXd& m, const std::vector<std::size_t>& columns) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    if (std::find(columns.begin(), columns.end(), static_cast<std::size_t>(c)) == columns.end()) keep.push_back(c);
  }
  Eigen::MatrixXd out(m.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = m.col(keep[i]);
  return out;
}

}  // namespace drsit
