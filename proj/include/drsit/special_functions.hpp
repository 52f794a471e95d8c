#pragma once

namespace drsit {

/// Regularized incomplete beta I_x(a, b), evaluated by a modified-Lentz
/// continued fraction on whichever side of the symmetry
/// I_x(a, b) = 1 - I_{1-x}(b, a) converges fastest.
double regularized_incomplete_beta(double a, double b, double x);

/// Student t distribution with positive integer degrees of freedom.
struct TDist {
  explicit TDist(long dof);

  long dof() const { return dof_; }
  double cdf(double t) const;
  /// P(|T| >= |t|).
  double two_sided_p(double t) const;

 private:
  long dof_;
};

double student_t_two_sided_p(double t, long dof);

}  // namespace drsit
