#include <cmath>

#include "drsit/error.hpp"
#include "drsit/regressor.hpp"

namespace drsit {

namespace {
// Diagonal jitter tried in order before the system is declared singular.
constexpr double kJitterSchedule[] = {0.0, 1e-10, 1e-8, 1e-6};
constexpr double kResidualTolerance = 1e-6;
}  // namespace

Eigen::MatrixXd polynomial_kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double gamma,
                                  double coef0, int degree) {
  Eigen::MatrixXd base = (gamma * (a * b.transpose())).array() + coef0;
  Eigen::MatrixXd out = base;
  for (int p = 1; p < degree; ++p) out.array() *= base.array();
  return out;
}

KernelRidgeModel KernelRidgeModel::fit(const RegressorSpec& spec, const Eigen::MatrixXd& features,
                                       const Eigen::VectorXd& targets, Standardizer standardizer) {
  spec.validate();
  if (features.rows() != targets.size()) {
    throw Error(ErrorKind::ShapeMismatch, std::to_string(features.rows()) + " feature rows vs " +
                                              std::to_string(targets.size()) + " targets");
  }
  if (features.rows() < 1) throw Error(ErrorKind::TooFewSamples, "kernel ridge needs at least one sample");
  if (!features.allFinite() || !targets.allFinite()) throw Error(ErrorKind::DomainError, "non-finite training data");

  KernelRidgeModel model;
  model.spec_ = spec;
  model.standardizer_ = std::move(standardizer);
  model.train_ = model.standardizer_.apply(features);
  model.gamma_ = spec.resolved_gamma(static_cast<std::size_t>(features.cols()));

  Eigen::MatrixXd system = model.kernel(model.train_, model.train_);
  system.diagonal().array() += spec.ridge_lambda;
  const double y_norm = targets.norm();

  for (double jitter : kJitterSchedule) {
    Eigen::MatrixXd jittered = system;
    jittered.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(jittered);
    if (llt.info() != Eigen::Success) continue;
    Eigen::VectorXd c = llt.solve(targets);
    if (!c.allFinite()) continue;
    const double residual = (system * c - targets).norm();
    if (residual <= kResidualTolerance * std::max(y_norm, 1e-300) || (y_norm == 0.0 && residual == 0.0)) {
      model.dual_coeffs_ = std::move(c);
      model.jitter_ = jitter;
      return model;
    }
  }
  throw Error(ErrorKind::SingularSystem, "regularized kernel system could not be solved after jitter escalation");
}

Eigen::MatrixXd KernelRidgeModel::kernel(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) const {
  return polynomial_kernel(a, b, gamma_, spec_.kernel_coef0, spec_.kernel_degree);
}

Eigen::VectorXd KernelRidgeModel::predict_standardized(const Eigen::MatrixXd& standardized) const {
  if (standardized.cols() != train_.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "query width " + std::to_string(standardized.cols()) +
                                              " vs training width " + std::to_string(train_.cols()));
  }
  if (standardized.rows() == 0) return Eigen::VectorXd(0);
  return kernel(standardized, train_) * dual_coeffs_;
}

Eigen::VectorXd KernelRidgeModel::predict(const Eigen::MatrixXd& features) const {
  if (features.cols() != train_.cols()) {
    throw Error(ErrorKind::ShapeMismatch, "query width " + std::to_string(features.cols()) +
                                              " vs training width " + std::to_string(train_.cols()));
  }
  return predict_standardized(standardizer_.apply(features));
}

}  // namespace drsit
