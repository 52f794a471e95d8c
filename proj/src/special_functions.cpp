#include "drsit/special_functions.hpp"

#include <cmath>
#include <limits>

#include "drsit/error.hpp"

namespace drsit {

namespace {

constexpr int kMaxIterations = 300;
constexpr double kRelTolerance = 1e-14;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b) (modified Lentz), valid for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kRelTolerance) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw Error(ErrorKind::DomainError, "incomplete beta needs a > 0 and b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorKind::DomainError, "incomplete beta needs x in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

TDist::TDist(long dof) : dof_(dof) {
  if (dof < 1) throw Error(ErrorKind::DomainError, "t distribution needs dof >= 1");
}

double TDist::two_sided_p(double t) const {
  if (std::isnan(t)) throw Error(ErrorKind::DomainError, "t statistic is NaN");
  if (std::isinf(t)) return 0.0;
  if (t == 0.0) return 1.0;
  const double nu = static_cast<double>(dof_);
  const double p = regularized_incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
  return std::min(1.0, std::max(0.0, p));
}

double TDist::cdf(double t) const {
  const double tail = 0.5 * two_sided_p(t);
  return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_two_sided_p(double t, long dof) {
  if (!std::isfinite(t)) throw Error(ErrorKind::DomainError, "t statistic must be finite");
  return TDist(dof).two_sided_p(t);
}

}  // namespace drsit
