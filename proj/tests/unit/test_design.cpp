#include <doctest.h>

#include <algorithm>
#include <set>

#include "drsit/error.hpp"
#include "drsit/folds.hpp"
#include "drsit/lagged_design.hpp"
#include "drsit/panel.hpp"
#include "drsit/standardizer.hpp"

using namespace drsit;

namespace {

Panel make_panel(std::size_t n_traj, std::size_t T, std::size_t m) {
  Panel p;
  p.variable_names.push_back("Y");
  for (std::size_t j = 1; j <= m; ++j) p.variable_names.push_back("X" + std::to_string(j));
  for (std::size_t r = 0; r < n_traj; ++r) {
    Eigen::MatrixXd x(T, m + 1);
    for (std::size_t t = 0; t < T; ++t)
      for (std::size_t v = 0; v <= m; ++v) x(t, v) = 1000.0 * r + 10.0 * t + v;
    p.trajectories.push_back(x);
  }
  return p;
}

}  // namespace

TEST_CASE("lagged design unrolls a single short trajectory") {
  Panel p = make_panel(1, 3, 1);
  const LaggedDesign d = build_lagged_design(p, 0, 1);
  REQUIRE(d.rows() == 2);
  REQUIRE(d.width() == 2);
  CHECK(d.features(0, 0) == p.trajectories[0](0, 0));
  CHECK(d.features(0, 1) == p.trajectories[0](0, 1));
  CHECK(d.targets(0) == p.trajectories[0](1, 0));
  CHECK(d.features(1, 0) == p.trajectories[0](1, 0));
  CHECK(d.targets(1) == p.trajectories[0](2, 0));
  CHECK(d.row_origin[1].time == 2);
}

TEST_CASE("lagged design has DREAM3 shape") {
  const LaggedDesign d = build_lagged_design(make_panel(2, 21, 99), 0, 2);
  CHECK(d.rows() == 38);
  CHECK(d.width() == 200);
}

TEST_CASE("lag must be shorter than every trajectory") {
  try {
    build_lagged_design(make_panel(1, 2, 1), 0, 2);
    FAIL("expected LagTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LagTooLarge);
  }
}

TEST_CASE("every design cell maps back to its panel entry") {
  const Panel p = make_panel(3, 9, 4);
  const std::size_t lag = 3;
  const std::size_t target = 2;
  const LaggedDesign d = build_lagged_design(p, target, lag);
  CHECK(d.rows() == 3 * (9 - lag));
  for (std::size_t row = 0; row < d.rows(); ++row) {
    const auto [r, t] = d.row_origin[row];
    CHECK(d.targets(row) == p.trajectories[r](t, target));
    for (std::size_t k = 1; k <= lag; ++k)
      for (std::size_t v = 0; v <= 4; ++v) CHECK(d.features(row, d.column(k, v)) == p.trajectories[r](t - k, v));
  }
}

TEST_CASE("mask columns follow the lag-major layout") {
  LaggedDesign d;
  d.lag = 2;
  d.num_variables = 3;
  CHECK(mask_columns_for(d, 1) == std::vector<std::size_t>{1, 4});
  d.lag = 1;
  d.num_variables = 8;
  CHECK(mask_columns_for(d, 0) == std::vector<std::size_t>{0});
  d.lag = 3;
  d.num_variables = 2;
  CHECK(mask_columns_for(d, 1) == std::vector<std::size_t>{1, 3, 5});
}

TEST_CASE("standardizer on a two-point column") {
  Eigen::MatrixXd x(2, 1);
  x << 1, 3;
  const Standardizer s = fit_standardizer(x);
  CHECK(s.means(0) == doctest::Approx(2));
  CHECK(s.stds(0) == doctest::Approx(1));
  const Eigen::MatrixXd z = s.apply(x);
  CHECK(z(0, 0) == doctest::Approx(-1));
  CHECK(z(1, 0) == doctest::Approx(1));
  CHECK(s.inverse(z).isApprox(x));
}

TEST_CASE("constant column is flagged and maps to zero") {
  Eigen::MatrixXd x = Eigen::MatrixXd::Constant(3, 1, 5.0);
  const Standardizer s = fit_standardizer(x);
  CHECK(s.zero_variance[0]);
  CHECK(s.stds(0) == 1.0);
  CHECK(s.apply(x).isZero());
}

TEST_CASE("standardizer fitted on a row subset does not centre the rest") {
  Eigen::MatrixXd x(4, 1);
  x << 0, 2, 10, 12;
  const std::vector<std::size_t> train{0, 1};
  const Standardizer s = fit_standardizer(x, train);
  const Eigen::MatrixXd z = s.apply(x);
  CHECK(z(0, 0) + z(1, 0) == doctest::Approx(0));
  CHECK(z(2, 0) + z(3, 0) > 1.0);
}

TEST_CASE("fold sizes are balanced") {
  auto sizes = assign_folds(10, 5, 3).fold_sizes();
  CHECK(std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s == 2; }));
  sizes = assign_folds(46, 5, 3).fold_sizes();
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{9, 9, 9, 9, 10});
}

TEST_CASE("fold assignment is deterministic and seed dependent") {
  CHECK(assign_folds(20, 4, 11).trajectory_to_fold == assign_folds(20, 4, 11).trajectory_to_fold);
  CHECK(assign_folds(20, 4, 11).trajectory_to_fold != assign_folds(20, 4, 12).trajectory_to_fold);
}
