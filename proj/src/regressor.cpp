#include "drsit/regressor.hpp"

#include "drsit/error.hpp"

namespace drsit {

const char* to_string(RegressorKind kind) noexcept {
  switch (kind) {
    case RegressorKind::KernelRidgePoly: return "kernel_ridge_poly";
    case RegressorKind::Mlp: return "mlp";
  }
  return "unknown";
}

RegressorKind regressor_kind_from_string(const std::string& name) {
  if (name == "kernel_ridge_poly") return RegressorKind::KernelRidgePoly;
  if (name == "mlp") return RegressorKind::Mlp;
  throw Error(ErrorKind::InvalidConfig, "unknown regressor kind '" + name + "'");
}

double RegressorSpec::resolved_gamma(std::size_t width) const {
  if (kernel_gamma) return *kernel_gamma;
  return width == 0 ? 1.0 : 1.0 / static_cast<double>(width);
}

void RegressorSpec::validate() const {
  if (!(ridge_lambda > 0.0)) throw Error(ErrorKind::InvalidConfig, "ridge_lambda must be > 0");
  if (kernel_degree < 1) throw Error(ErrorKind::InvalidConfig, "kernel_degree must be >= 1");
  if (kernel_gamma && !(*kernel_gamma > 0.0)) throw Error(ErrorKind::InvalidConfig, "kernel_gamma must be > 0");
  if (kind == RegressorKind::Mlp) {
    if (mlp_hidden == 0) throw Error(ErrorKind::InvalidConfig, "mlp_hidden must be positive");
    if (!(mlp_learning_rate > 0.0)) throw Error(ErrorKind::InvalidConfig, "mlp_learning_rate must be > 0");
  }
}

const Standardizer& Regressor::standardizer() const {
  return std::visit([](const auto& m) -> const Standardizer& { return m.standardizer(); }, model_);
}

std::size_t Regressor::width() const { return standardizer().width(); }

Eigen::VectorXd Regressor::predict_standardized(const Eigen::MatrixXd& standardized) const {
  return std::visit([&](const auto& m) { return m.predict_standardized(standardized); }, model_);
}

Eigen::VectorXd Regressor::predict(const Eigen::MatrixXd& features) const {
  if (static_cast<std::size_t>(features.cols()) != width()) {
    throw Error(ErrorKind::ShapeMismatch, "query width " + std::to_string(features.cols()) + " vs model width " +
                                              std::to_string(width()));
  }
  return predict_standardized(standardizer().apply(features));
}

Eigen::VectorXd Regressor::predict_masked(const Eigen::MatrixXd& features,
                                          std::span<const std::size_t> masked_columns) const {
  if (static_cast<std::size_t>(features.cols()) != width()) {
    throw Error(ErrorKind::ShapeMismatch, "query width " + std::to_string(features.cols()) + " vs model width " +
                                              std::to_string(width()));
  }
  Eigen::MatrixXd z = standardizer().apply(features);
  for (std::size_t c : masked_columns) {
    if (c >= width()) throw Error(ErrorKind::IndexOutOfRange, "masked column " + std::to_string(c) + " out of range");
    z.col(static_cast<Eigen::Index>(c)).setZero();
  }
  return predict_standardized(z);
}

Regressor fit_regressor(const RegressorSpec& spec, const Eigen::MatrixXd& features, const Eigen::VectorXd& targets,
                        bool standardize) {
  if (features.rows() != targets.size()) {
    throw Error(ErrorKind::ShapeMismatch, std::to_string(features.rows()) + " feature rows vs " +
                                              std::to_string(targets.size()) + " targets");
  }
  if (features.rows() < 1) throw Error(ErrorKind::TooFewSamples, "cannot fit on zero rows");
  Standardizer s = standardize ? fit_standardizer(features)
                               : Standardizer::identity(static_cast<std::size_t>(features.cols()));
  switch (spec.kind) {
    case RegressorKind::KernelRidgePoly:
      return Regressor(KernelRidgeModel::fit(spec, features, targets, std::move(s)));
    case RegressorKind::Mlp:
      return Regressor(MlpRegressor::fit(spec, features, targets, std::move(s)));
  }
  throw Error(ErrorKind::InvalidConfig, "unknown regressor kind");
}

}  // namespace drsit
