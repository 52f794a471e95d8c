#include "drsit/synth.hpp"

#include <cmath>
#include <string>

#include "drsit/error.hpp"
#include "drsit/rng.hpp"

namespace drsit {

namespace {
// Stream tags. Every random draw is addressed by (seed, tag, ...), so changing
// one part of the structure never shifts the draws used elsewhere.
constexpr std::uint64_t kSigmaStream = 0x5167;
constexpr std::uint64_t kSigmaYStream = 0x5159;
constexpr std::uint64_t kWeightStream = 0x5745;
constexpr std::uint64_t kUniformStream = 0x554E;
constexpr std::uint64_t kNoiseStream = 0x4E4F;
}  // namespace

void SynthConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::InvalidConfig, msg); };
  if (m < 1) fail("m must be >= 1");
  if (delta < 1) fail("delta must be >= 1");
  if (timesteps <= delta) fail("timesteps must exceed delta");
  if (n_traj < 1) fail("trajectories must be >= 1");
  if (!(nsr >= 0.0) || !std::isfinite(nsr)) fail("nsr must be a finite value >= 0");
  if (!(edge_prob >= 0.0 && edge_prob <= 1.0)) fail("edge_prob must lie in [0, 1]");
  if (hidden_units < 1) fail("hidden_units must be >= 1");
  if (!(signal_scale > 0.0) || !std::isfinite(signal_scale)) fail("signal_scale must be > 0");
}

AdjacencyTensor::AdjacencyTensor(std::size_t delta_, std::size_t m_)
    : delta(delta_), m(m_), sigma(delta_ * m_ * m_, 0), sigma_y(delta_ * m_, 0) {}

std::vector<bool> AdjacencyTensor::target_parents() const {
  std::vector<bool> out(m, false);
  for (std::size_t k = 0; k < delta; ++k)
    for (std::size_t j = 0; j < m; ++j)
      if (at_y(k, j)) out[j] = true;
  return out;
}

bool AdjacencyTensor::covariate_edge(std::size_t i, std::size_t j) const {
  for (std::size_t k = 0; k < delta; ++k)
    if (at(k, i, j)) return true;
  return false;
}

double MlpTransform::operator()(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd hidden = (w1 * x + b1).array().tanh();
  return scale * std::tanh(w2.dot(hidden) + b2);
}

AdjacencyTensor sample_structure(const SynthConfig& config) {
  config.validate();
  AdjacencyTensor a(config.delta, config.m);
  CounterRng sigma_rng(config.seed, {kSigmaStream});
  for (auto& e : a.sigma) e = sigma_rng.bernoulli(config.edge_prob) ? 1 : 0;
  CounterRng y_rng(config.seed, {kSigmaYStream});
  for (auto& e : a.sigma_y) e = y_rng.bernoulli(config.edge_prob) ? 1 : 0;
  return a;
}

std::vector<MlpTransform> init_transforms(const AdjacencyTensor& structure, const SynthConfig& config) {
  const std::size_t m = structure.m;
  std::vector<MlpTransform> out(m + 1);
  for (std::size_t v = 0; v <= m; ++v) {
    MlpTransform& f = out[v];
    f.scale = config.signal_scale;
    for (std::size_t k = 0; k < structure.delta; ++k) {
      for (std::size_t p = 0; p < m; ++p) {
        const bool edge = v < m ? structure.at(k, p, v) != 0 : structure.at_y(k, p) != 0;
        if (edge) f.inputs.push_back({k, p});
      }
    }
    if (f.parentless()) continue;

    const auto h = static_cast<Eigen::Index>(config.hidden_units);
    const auto d = static_cast<Eigen::Index>(f.input_dim());
    const double s_in = 1.0 / std::sqrt(static_cast<double>(d));
    const double s_hidden = 1.0 / std::sqrt(static_cast<double>(h));
    CounterRng rng(config.seed, {kWeightStream, v});
    f.w1.resize(h, d);
    for (Eigen::Index i = 0; i < h; ++i)
      for (Eigen::Index j = 0; j < d; ++j) f.w1(i, j) = rng.normal(0.0, s_in);
    f.b1.resize(h);
    for (Eigen::Index i = 0; i < h; ++i) f.b1(i) = rng.normal(0.0, s_in);
    f.w2.resize(h);
    for (Eigen::Index i = 0; i < h; ++i) f.w2(i) = rng.normal(0.0, s_hidden);
    f.b2 = rng.normal(0.0, s_hidden);
  }
  return out;
}

Panel simulate_with_structure(const SynthConfig& config, const AdjacencyTensor& structure) {
  config.validate();
  if (structure.m != config.m || structure.delta != config.delta) {
    throw Error(ErrorKind::InvalidConfig, "structure shape does not match the config");
  }
  const std::size_t m = config.m;
  const auto transforms = init_transforms(structure, config);
  const double scale = config.signal_scale;
  const double target_noise_sd = config.nsr * scale;

  Panel panel;
  panel.variable_names.push_back("Y");
  for (std::size_t j = 1; j <= m; ++j) panel.variable_names.push_back("X" + std::to_string(j));
  panel.target_index = 0;

  // Panel column of covariate j is j + 1; the target is column 0. Transform m is the target's.
  auto column_of = [m](std::size_t v) { return static_cast<Eigen::Index>(v == m ? 0 : v + 1); };

  for (std::size_t r = 0; r < config.n_traj; ++r) {
    Eigen::MatrixXd traj(static_cast<Eigen::Index>(config.timesteps), static_cast<Eigen::Index>(m + 1));
    for (std::size_t t = 0; t < config.timesteps; ++t) {
      for (std::size_t v = 0; v <= m; ++v) {
        CounterRng uni(config.seed, {kUniformStream, r, t, v});
        double value;
        if (t < config.delta) {
          value = uni.uniform(-scale, scale);
        } else {
          const MlpTransform& f = transforms[v];
          if (f.parentless()) {
            value = uni.uniform(-scale, scale);
          } else {
            Eigen::VectorXd x(static_cast<Eigen::Index>(f.input_dim()));
            for (std::size_t s = 0; s < f.inputs.size(); ++s) {
              const auto [k, p] = f.inputs[s];
              x(static_cast<Eigen::Index>(s)) = traj(static_cast<Eigen::Index>(t - k - 1), column_of(p));
            }
            value = f(x);
          }
          CounterRng noise(config.seed, {kNoiseStream, r, t, v});
          value += noise.normal(0.0, v == m ? target_noise_sd : 1.0);
        }
        traj(static_cast<Eigen::Index>(t), column_of(v)) = value;
      }
    }
    panel.trajectories.push_back(std::move(traj));
  }
  return panel;
}

SynthDataset simulate_panel(const SynthConfig& config) {
  SynthDataset out;
  out.truth = sample_structure(config);
  out.panel = simulate_with_structure(config, out.truth);
  return out;
}

}  // namespace drsit
