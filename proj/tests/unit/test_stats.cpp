#include <doctest.h>

#include <cmath>
#include <numbers>

#include "drsit/dml.hpp"
#include "drsit/error.hpp"
#include "drsit/special_functions.hpp"

using namespace drsit;

TEST_CASE("incomplete beta boundary and closed forms") {
  CHECK(regularized_incomplete_beta(2.5, 3.0, 0.0) == 0.0);
  CHECK(regularized_incomplete_beta(2.5, 3.0, 1.0) == 1.0);
  CHECK(regularized_incomplete_beta(1.0, 1.0, 0.37) == doctest::Approx(0.37).epsilon(1e-12));
  CHECK(regularized_incomplete_beta(2.0, 2.0, 0.5) == doctest::Approx(0.5).epsilon(1e-12));
  // I_x(a, 1) = x^a
  CHECK(std::abs(regularized_incomplete_beta(3.5, 1.0, 0.6) - std::pow(0.6, 3.5)) < 1e-12);
  CHECK_THROWS_AS(regularized_incomplete_beta(0.0, 1.0, 0.5), Error);
  CHECK_THROWS_AS(regularized_incomplete_beta(1.0, 1.0, 1.5), Error);
}

TEST_CASE("student t p-values match closed forms") {
  CHECK(student_t_two_sided_p(0.0, 7) == 1.0);
  for (double t : {0.1, 0.5, 1.0, 2.0, 5.0, 30.0}) {
    const double cauchy = 2.0 * (0.5 - std::atan(t) / std::numbers::pi);
    const double dof2 = 2.0 * (0.5 - t / (2.0 * std::sqrt(2.0 + t * t)));
    CHECK(std::abs(student_t_two_sided_p(t, 1) - cauchy) < 1e-9);
    CHECK(std::abs(student_t_two_sided_p(-t, 2) - dof2) < 1e-9);
  }
  CHECK(student_t_two_sided_p(1.0, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(student_t_two_sided_p(2.0 * std::sqrt(3.0), 2) == doctest::Approx(0.0742).epsilon(1e-3));
  CHECK(TDist(3).two_sided_p(INFINITY) == 0.0);
  CHECK_THROWS_AS(student_t_two_sided_p(NAN, 3), Error);
}

TEST_CASE("t cdf is monotone") {
  const TDist d(5);
  double prev = 0.0;
  for (double t = -10; t <= 10; t += 0.25) {
    const double c = d.cdf(t);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("paired t-test examples") {
  const std::vector<double> zeros{0, 0, 0, 0};
  TTestResult r = paired_t_test(zeros, 0.05);
  CHECK(r.t_stat == 0.0);
  CHECK(r.p_value == 1.0);
  CHECK_FALSE(r.selected);

  const std::vector<double> z{1, 2, 3};
  r = paired_t_test(z, 0.05);
  CHECK(r.mean == doctest::Approx(2));
  CHECK(r.std == doctest::Approx(1));
  CHECK(r.t_stat == doctest::Approx(2.0 * std::sqrt(3.0)));
  CHECK(r.p_value == doctest::Approx(0.0742).epsilon(1e-3));
  CHECK_FALSE(r.selected);

  const std::vector<double> sym{-1, 1};
  r = paired_t_test(sym, 0.05);
  CHECK(r.t_stat == 0.0);
  CHECK(r.p_value == doctest::Approx(1.0));

  const std::vector<double> shifted{2, 2, 2};
  r = paired_t_test(shifted, 0.05);
  CHECK(r.p_value == 0.0);
  CHECK(r.selected);

  const std::vector<double> one{1};
  CHECK_THROWS_AS(paired_t_test(one, 0.05), Error);
}
