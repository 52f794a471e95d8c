#include <doctest.h>

#include <cmath>

#include "drsit/rng.hpp"
#include "drsit/synth.hpp"

using namespace drsit;

namespace {

double density(const AdjacencyTensor& a) {
  double ones = 0.0;
  for (auto v : a.sigma) ones += v;
  for (auto v : a.sigma_y) ones += v;
  return ones / static_cast<double>(a.sigma.size() + a.sigma_y.size());
}

SynthConfig small(std::uint64_t seed) {
  SynthConfig c;
  c.m = 4;
  c.timesteps = 60;
  c.n_traj = 2;
  c.hidden_units = 8;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("edge probability extremes") {
  SynthConfig c;
  c.edge_prob = 0.0;
  CHECK(density(sample_structure(c)) == 0.0);
  c.edge_prob = 1.0;
  CHECK(density(sample_structure(c)) == 1.0);
}

TEST_CASE("structure density tracks the edge probability") {
  SynthConfig c;
  double total = 0.0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    c.seed = s;
    total += density(sample_structure(c));
  }
  CHECK(total / 100.0 >= 0.45);
  CHECK(total / 100.0 <= 0.55);
}

TEST_CASE("transforms follow the structure") {
  SynthConfig c = small(3);
  AdjacencyTensor a = sample_structure(c);
  a.at_y(1, 2) = 1;
  a.at_y(0, 3) = 0;
  const auto f = init_transforms(a, c);
  REQUIRE(f.size() == c.m + 1);
  std::size_t parents = 0;
  for (std::size_t k = 0; k < c.delta; ++k)
    for (std::size_t j = 0; j < c.m; ++j) parents += a.at_y(k, j);
  CHECK(f[c.m].input_dim() == parents);
  for (std::size_t i = 1; i < f[c.m].inputs.size(); ++i) {
    const auto& p = f[c.m].inputs[i - 1];
    const auto& q = f[c.m].inputs[i];
    CHECK((p.lag < q.lag || (p.lag == q.lag && p.parent < q.parent)));
  }
}

TEST_CASE("parentless variable gets an empty transform") {
  SynthConfig c = small(1);
  c.edge_prob = 0.0;
  const auto f = init_transforms(sample_structure(c), c);
  for (const auto& t : f) CHECK(t.parentless());
}

TEST_CASE("mlp transform saturates and vanishes at zero") {
  MlpTransform t;
  t.inputs = {ParentSlot{0, 0}};
  t.w1 = Eigen::MatrixXd::Ones(1, 1);
  t.b1 = Eigen::VectorXd::Zero(1);
  t.w2 = Eigen::VectorXd::Ones(1);
  t.scale = 10.0;
  CHECK(t(Eigen::VectorXd::Zero(1)) == 0.0);
  CHECK(std::abs(t(Eigen::VectorXd::Constant(1, 1e9))) <= 10.0);
  CHECK(std::abs(t(Eigen::VectorXd::Constant(1, -1e9))) <= 10.0);
}

TEST_CASE("panel shape and names") {
  SynthConfig c;
  c.hidden_units = 16;
  const SynthDataset ds = simulate_panel(c);
  REQUIRE(ds.panel.num_trajectories() == 5);
  for (const auto& x : ds.panel.trajectories) {
    CHECK(x.rows() == 500);
    CHECK(x.cols() == 11);
  }
  CHECK(ds.panel.variable_names.front() == "Y");
  CHECK(ds.panel.variable_names.back() == "X10");
  CHECK(ds.panel.target_index == 0);
}

TEST_CASE("simulation is bitwise deterministic") {
  const SynthDataset a = simulate_panel(small(42));
  const SynthDataset b = simulate_panel(small(42));
  CHECK(a.truth == b.truth);
  for (std::size_t r = 0; r < a.panel.num_trajectories(); ++r) CHECK(a.panel.trajectories[r] == b.panel.trajectories[r]);
  const SynthDataset c = simulate_panel(small(43));
  CHECK(c.panel.trajectories[0] != a.panel.trajectories[0]);
}

TEST_CASE("noiseless target equals its structural function") {
  SynthConfig c = small(5);
  c.nsr = 0.0;
  AdjacencyTensor a = sample_structure(c);
  a.at_y(0, 1) = 1;
  const Panel p = simulate_with_structure(c, a);
  const auto f = init_transforms(a, c)[c.m];
  for (const auto& x : p.trajectories) {
    for (std::size_t t = c.delta; t < c.timesteps; ++t) {
      Eigen::VectorXd in(f.input_dim());
      for (std::size_t s = 0; s < f.inputs.size(); ++s) in(s) = x(t - f.inputs[s].lag - 1, f.inputs[s].parent + 1);
      CHECK(x(t, 0) == doctest::Approx(f(in)).epsilon(1e-12));
    }
  }
}

TEST_CASE("intervening on target parents leaves covariates untouched") {
  SynthConfig c = small(8);
  AdjacencyTensor a = sample_structure(c);
  AdjacencyTensor b = a;
  for (auto& v : b.sigma_y) v = 0;
  b.at_y(0, 0) = 1;
  a.at_y(0, 0) = 0;
  a.at_y(1, 3) = 1;
  const Panel pa = simulate_with_structure(c, a);
  const Panel pb = simulate_with_structure(c, b);
  for (std::size_t r = 0; r < pa.num_trajectories(); ++r) {
    CHECK(pa.trajectories[r].rightCols(c.m) == pb.trajectories[r].rightCols(c.m));
    CHECK(pa.trajectories[r].col(0) != pb.trajectories[r].col(0));
  }
}

TEST_CASE("initial steps are uniform on the signal range") {
  SynthConfig c = small(9);
  const Panel p = simulate_panel(c).panel;
  for (const auto& x : p.trajectories)
    CHECK(x.topRows(c.delta).cwiseAbs().maxCoeff() <= c.signal_scale);
}

TEST_CASE("counter rng streams are reproducible and roughly standard") {
  CounterRng a(7, {1, 2}), b(7, {1, 2}), other(7, {1, 3});
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_u64() != other.next_u64());
  CounterRng g(1, {0});
  double sum = 0.0, sq = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const double v = g.normal();
    sum += v;
    sq += v * v;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sq / n - 1.0) < 0.05);
  for (int i = 0; i < 1000; ++i) CHECK(g.below(7) < 7);
}

TEST_CASE("invalid simulation configs are rejected") {
  SynthConfig c;
  c.nsr = -1.0;
  CHECK_THROWS(c.validate());
  c = SynthConfig{};
  c.edge_prob = 1.5;
  CHECK_THROWS(c.validate());
  c = SynthConfig{};
  c.timesteps = c.delta;
  CHECK_THROWS(c.validate());
}
