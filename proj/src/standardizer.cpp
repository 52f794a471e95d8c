#include "drsit/standardizer.hpp"

#include <cmath>

#include "drsit/error.hpp"

namespace drsit {

Eigen::MatrixXd Standardizer::apply(const Eigen::MatrixXd& features) const {
  if (static_cast<std::size_t>(features.cols()) != width()) {
    throw Error(ErrorKind::ShapeMismatch, "standardizer width " + std::to_string(width()) + " vs " +
                                              std::to_string(features.cols()) + " columns");
  }
  return (features.rowwise() - means.transpose()).array().rowwise() / stds.transpose().array();
}

Eigen::MatrixXd Standardizer::inverse(const Eigen::MatrixXd& standardized) const {
  if (static_cast<std::size_t>(standardized.cols()) != width()) {
    throw Error(ErrorKind::ShapeMismatch, "standardizer width mismatch");
  }
  return (standardized.array().rowwise() * stds.transpose().array()).matrix().rowwise() + means.transpose();
}

Standardizer Standardizer::identity(std::size_t width) {
  Standardizer s;
  s.means = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(width));
  s.stds = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(width));
  s.zero_variance.assign(width, false);
  return s;
}

Standardizer fit_standardizer(const Eigen::MatrixXd& features, std::span<const std::size_t> rows) {
  const Eigen::Index d = features.cols();
  const bool all = rows.empty();
  const std::size_t n = all ? static_cast<std::size_t>(features.rows()) : rows.size();
  if (n == 0) throw Error(ErrorKind::TooFewSamples, "cannot fit a standardizer on zero rows");

  auto row_at = [&](std::size_t i) { return static_cast<Eigen::Index>(all ? i : rows[i]); };

  Standardizer s;
  s.means = Eigen::VectorXd::Zero(d);
  s.stds = Eigen::VectorXd::Ones(d);
  s.zero_variance.assign(static_cast<std::size_t>(d), false);
  for (std::size_t i = 0; i < n; ++i) s.means += features.row(row_at(i)).transpose();
  s.means /= static_cast<double>(n);

  Eigen::VectorXd var = Eigen::VectorXd::Zero(d);
  for (std::size_t i = 0; i < n; ++i) var += (features.row(row_at(i)).transpose() - s.means).array().square().matrix();
  var /= static_cast<double>(n);

  for (Eigen::Index c = 0; c < d; ++c) {
    const double sd = std::sqrt(var(c));
    // Relative threshold so constant columns with rounding noise count as constant.
    if (!(sd > 1e-12 * std::max(1.0, std::abs(s.means(c))))) {
      s.zero_variance[static_cast<std::size_t>(c)] = true;
      s.stds(c) = 1.0;
    } else {
      s.stds(c) = sd;
    }
  }
  return s;
}

}  // namespace drsit
