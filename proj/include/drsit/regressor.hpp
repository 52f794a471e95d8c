#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "drsit/standardizer.hpp"

namespace drsit {

enum class RegressorKind { KernelRidgePoly, Mlp };

const char* to_string(RegressorKind kind) noexcept;
RegressorKind regressor_kind_from_string(const std::string& name);

struct RegressorSpec {
  RegressorKind kind = RegressorKind::KernelRidgePoly;
  int kernel_degree = 3;
  double kernel_coef0 = 1.0;
  double ridge_lambda = 1.0;
  /// Empty means "auto": 1 / feature count.
  std::optional<double> kernel_gamma;
  std::size_t mlp_hidden = 64;
  std::size_t mlp_epochs = 2000;
  double mlp_learning_rate = 0.05;
  std::uint64_t mlp_seed = 0;

  double resolved_gamma(std::size_t width) const;
  void validate() const;
};

/// Polynomial-kernel ridge regression solved in dual form:
/// (K + lambda I) c = y with K_ab = (gamma <x_a, x_b> + coef0)^degree,
/// all in standardized feature space.
class KernelRidgeModel {
 public:
  static KernelRidgeModel fit(const RegressorSpec& spec, const Eigen::MatrixXd& features,
                              const Eigen::VectorXd& targets, Standardizer standardizer);

  Eigen::VectorXd predict(const Eigen::MatrixXd& features) const;
  Eigen::VectorXd predict_standardized(const Eigen::MatrixXd& standardized) const;

  const Eigen::VectorXd& dual_coeffs() const { return dual_coeffs_; }
  const Eigen::MatrixXd& train_features() const { return train_; }
  const Standardizer& standardizer() const { return standardizer_; }
  double gamma() const { return gamma_; }
  /// Diagonal jitter that was needed for the factorization to succeed.
  double jitter() const { return jitter_; }

 private:
  Eigen::MatrixXd kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const;

  RegressorSpec spec_;
  Standardizer standardizer_;
  Eigen::MatrixXd train_;
  Eigen::VectorXd dual_coeffs_;
  double gamma_ = 1.0;
  double jitter_ = 0.0;
};

/// Polynomial kernel Gram block between the rows of `a` and `b`.
Eigen::MatrixXd polynomial_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double gamma,
                                  double coef0, int degree);

/// One tanh hidden layer and a linear output, trained by full-batch gradient
/// descent on squared error from a seeded initialization.
class MlpRegressor {
 public:
  static MlpRegressor fit(const RegressorSpec& spec, const Eigen::MatrixXd& features,
                          const Eigen::VectorXd& targets, Standardizer standardizer);

  Eigen::VectorXd predict(const Eigen::MatrixXd& features) const;
  Eigen::VectorXd predict_standardized(const Eigen::MatrixXd& standardized) const;

  const Standardizer& standardizer() const { return standardizer_; }

 private:
  Standardizer standardizer_;
  Eigen::MatrixXd w1_;  // hidden x input
  Eigen::VectorXd b1_;
  Eigen::VectorXd w2_;  // hidden
  double b2_ = 0.0;
  double y_mean_ = 0.0;
  double y_scale_ = 1.0;
};

/// A fitted nuisance regressor. The same model serves as the regression
/// function and its Riesz representer.
class Regressor {
 public:
  using Model = std::variant<KernelRidgeModel, MlpRegressor>;

  explicit Regressor(Model model) : model_(std::move(model)) {}

  Eigen::VectorXd predict(const Eigen::MatrixXd& features) const;

  /// Prediction with the listed columns overwritten by zero in standardized
  /// space, i.e. by their training mean in raw space.
  Eigen::VectorXd predict_masked(const Eigen::MatrixXd& features,
                                 std::span<const std::size_t> masked_columns) const;

  std::size_t width() const;
  const Model& model() const { return model_; }

 private:
  const Standardizer& standardizer() const;
  Eigen::VectorXd predict_standardized(const Eigen::MatrixXd& standardized) const;

  Model model_;
};

/// Fits the regressor named by `spec`. With `standardize` off, features are
/// used as-is and masking substitutes raw zeros.
Regressor fit_regressor(const RegressorSpec& spec, const Eigen::MatrixXd& features,
                        const Eigen::VectorXd& targets, bool standardize = true);

}  // namespace drsit
