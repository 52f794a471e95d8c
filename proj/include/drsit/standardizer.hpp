#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace drsit {

/// Per-column affine map to zero mean / unit variance. Columns with zero
/// variance on the fitting rows keep std = 1 and are flagged, so they map to
/// exactly zero.
struct Standardizer {
  Eigen::VectorXd means;
  Eigen::VectorXd stds;
  std::vector<bool> zero_variance;

  std::size_t width() const { return static_cast<std::size_t>(means.size()); }

  Eigen::MatrixXd apply(const Eigen::MatrixXd& features) const;
  Eigen::MatrixXd inverse(const Eigen::MatrixXd& standardized) const;

  static Standardizer identity(std::size_t width);
};

/// Population mean/std over the given rows. An empty `rows` span means all rows.
Standardizer fit_standardizer(const Eigen::MatrixXd& features, std::span<const std::size_t> rows = {});

}  // namespace drsit
