#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "drsit/panel.hpp"

namespace drsit {

struct SynthConfig {
  std::size_t m = 10;
  std::size_t delta = 2;
  std::size_t timesteps = 500;
  std::size_t n_traj = 5;
  double nsr = 0.1;
  double edge_prob = 0.5;
  std::size_t hidden_units = 200;
  double signal_scale = 10.0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// sigma(k, i, j) = 1 iff covariate i at t - (k + 1) causes covariate j at t;
/// sigma_y(k, j) = 1 iff covariate j at t - (k + 1) causes the target at t.
/// Indices are 0-based here; serialized forms use 1-based lags.
struct AdjacencyTensor {
  std::size_t delta = 0;
  std::size_t m = 0;
  std::vector<std::uint8_t> sigma;    // delta * m * m, index (k * m + i) * m + j
  std::vector<std::uint8_t> sigma_y;  // delta * m, index k * m + j

  AdjacencyTensor() = default;
  AdjacencyTensor(std::size_t delta, std::size_t m);

  std::uint8_t& at(std::size_t k, std::size_t i, std::size_t j) { return sigma[(k * m + i) * m + j]; }
  std::uint8_t at(std::size_t k, std::size_t i, std::size_t j) const { return sigma[(k * m + i) * m + j]; }
  std::uint8_t& at_y(std::size_t k, std::size_t j) { return sigma_y[k * m + j]; }
  std::uint8_t at_y(std::size_t k, std::size_t j) const { return sigma_y[k * m + j]; }

  /// Covariates with a lagged edge into the target (summary graph).
  std::vector<bool> target_parents() const;
  /// Summary edge covariate i -> covariate j for some lag.
  bool covariate_edge(std::size_t i, std::size_t j) const;

  bool operator==(const AdjacencyTensor&) const = default;
};

/// A (lag, parent) input slot of a structural function, 0-based lag.
struct ParentSlot {
  std::size_t lag = 0;
  std::size_t parent = 0;
};

/// out(x) = scale * tanh(w2 . tanh(W1 x + b1) + b2).
struct MlpTransform {
  std::vector<ParentSlot> inputs;  // lag-major, parent-minor
  Eigen::MatrixXd w1;
  Eigen::VectorXd b1;
  Eigen::VectorXd w2;
  double b2 = 0.0;
  double scale = 10.0;

  std::size_t input_dim() const { return inputs.size(); }
  bool parentless() const { return inputs.empty(); }
  double operator()(const Eigen::VectorXd& x) const;
};

AdjacencyTensor sample_structure(const SynthConfig& config);

/// Transforms for covariates 0..m-1 followed by the target at index m.
std::vector<MlpTransform> init_transforms(const AdjacencyTensor& structure, const SynthConfig& config);

struct SynthDataset {
  Panel panel;  // column 0 is the target "Y", columns 1..m are "X1".."Xm"
  AdjacencyTensor truth;
};

SynthDataset simulate_panel(const SynthConfig& config);

/// Simulation with caller-supplied structure (used for interventions).
Panel simulate_with_structure(const SynthConfig& config, const AdjacencyTensor& structure);

}  // namespace drsit
