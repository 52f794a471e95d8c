#include <cmath>

#include "drsit/error.hpp"
#include "drsit/regressor.hpp"
#include "drsit/rng.hpp"

namespace drsit {

MlpRegressor MlpRegressor::fit(const RegressorSpec& spec, const Eigen::MatrixXd& features,
                               const Eigen::VectorXd& targets, Standardizer standardizer) {
  spec.validate();
  if (features.rows() != targets.size()) throw Error(ErrorKind::ShapeMismatch, "feature rows vs targets");
  if (features.rows() < 1) throw Error(ErrorKind::TooFewSamples, "mlp needs at least one sample");

  MlpRegressor model;
  model.standardizer_ = std::move(standardizer);
  const Eigen::MatrixXd x = model.standardizer_.apply(features);
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  const Eigen::Index h = static_cast<Eigen::Index>(spec.mlp_hidden);

  model.y_mean_ = targets.mean();
  const double var = (targets.array() - model.y_mean_).square().mean();
  model.y_scale_ = var > 0.0 ? std::sqrt(var) : 1.0;
  const Eigen::VectorXd y = (targets.array() - model.y_mean_) / model.y_scale_;

  CounterRng rng(spec.mlp_seed, {0x4D4C50});
  model.w1_.resize(h, d);
  model.b1_ = Eigen::VectorXd::Zero(h);
  model.w2_.resize(h);
  const double s1 = 1.0 / std::sqrt(static_cast<double>(std::max<Eigen::Index>(d, 1)));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(h));
  for (Eigen::Index i = 0; i < h; ++i)
    for (Eigen::Index j = 0; j < d; ++j) model.w1_(i, j) = rng.normal(0.0, s1);
  for (Eigen::Index i = 0; i < h; ++i) model.w2_(i) = rng.normal(0.0, s2);

  const double lr = spec.mlp_learning_rate;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t epoch = 0; epoch < spec.mlp_epochs; ++epoch) {
    Eigen::MatrixXd hidden = ((x * model.w1_.transpose()).rowwise() + model.b1_.transpose()).array().tanh();
    Eigen::VectorXd out = (hidden * model.w2_).array() + model.b2_;
    Eigen::VectorXd err = (out - y) * inv_n;  // d(0.5 * mse)/d(out)

    Eigen::VectorXd grad_w2 = hidden.transpose() * err;
    const double grad_b2 = err.sum();
    Eigen::MatrixXd delta = (err * model.w2_.transpose()).array() * (1.0 - hidden.array().square());
    Eigen::MatrixXd grad_w1 = delta.transpose() * x;
    Eigen::VectorXd grad_b1 = delta.colwise().sum().transpose();

    model.w2_ -= lr * grad_w2;
    model.b2_ -= lr * grad_b2;
    model.w1_ -= lr * grad_w1;
    model.b1_ -= lr * grad_b1;
  }
  if (!model.w1_.allFinite() || !model.w2_.allFinite()) {
    throw Error(ErrorKind::NonFiniteScore, "mlp training diverged; lower the learning rate");
  }
  return model;
}

Eigen::VectorXd MlpRegressor::predict_standardized(const Eigen::MatrixXd& standardized) const {
  if (standardized.cols() != w1_.cols()) throw Error(ErrorKind::ShapeMismatch, "mlp query width mismatch");
  if (standardized.rows() == 0) return Eigen::VectorXd(0);
  Eigen::MatrixXd hidden = ((standardized * w1_.transpose()).rowwise() + b1_.transpose()).array().tanh();
  Eigen::VectorXd out = (hidden * w2_).array() + b2_;
  return (out.array() * y_scale_ + y_mean_).matrix();
}

Eigen::VectorXd MlpRegressor::predict(const Eigen::MatrixXd& features) const {
  return predict_standardized(standardizer_.apply(features));
}

}  // namespace drsit
