#include "hadrf/special.hpp"

#include <cmath>
#include <stdexcept>

#include "hadrf/errors.hpp"

namespace hadrf {

namespace {
constexpr double kInvSqrt2Pi = 0.3989422804014326779;
constexpr double kSqrtPi = 1.7724538509055160273;
}  // namespace

double gaussian_density(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double gaussian_tail(double x) {
  if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
  return 0.5 * std::erfc(x * 0.7071067811865475244);
}

double hermite(int m, double x) {
  if (m < 0) throw std::invalid_argument("hermite: order must be nonnegative");
  if (m == 0) return 1.0;
  double prev = 1.0, cur = x;
  for (int j = 1; j < m; ++j) {
    double next = x * cur - static_cast<double>(j) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::invalid_argument("gamma_fn: argument must be positive");
  // Half-integers are the hot path; use exact recurrences there.
  double twice = 2.0 * x;
  if (twice == std::floor(twice)) {
    long n = static_cast<long>(std::floor(x));
    if (x == std::floor(x)) {
      double g = 1.0;
      for (long j = 2; j < n; ++j) g *= static_cast<double>(j);
      return g;  // (n-1)!
    }
    double g = kSqrtPi;  // Gamma(1/2)
    for (long j = 0; j < n; ++j) g *= (0.5 + static_cast<double>(j));
    return g;
  }
  return std::tgamma(x);
}

namespace {

// Lower regularized incomplete gamma by series; for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-16) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw numeric_error("gamma_p_series: no convergence");
}

// Upper regularized incomplete gamma by continued fraction; for x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) {
      return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    }
  }
  throw numeric_error("gamma_q_cf: no convergence");
}

}  // namespace

double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw std::invalid_argument("gamma_q: shape must be positive");
  if (x < 0.0) throw std::invalid_argument("gamma_q: argument must be nonnegative");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double ball_volume(int n) {
  if (n < 0) throw std::invalid_argument("ball_volume: dimension must be nonnegative");
  return std::pow(M_PI, 0.5 * n) / gamma_fn(0.5 * n + 1.0);
}

double binomial(int n, int m) {
  if (m < 0 || m > n) return 0.0;
  if (m > n - m) m = n - m;
  double r = 1.0;
  for (int j = 1; j <= m; ++j) r = r * static_cast<double>(n - m + j) / static_cast<double>(j);
  return r;
}

double flag_coefficient(int n, int m) {
  if (m < 0 || m > n) throw std::invalid_argument("flag_coefficient: need 0 <= m <= n");
  return binomial(n, m) * ball_volume(n) / (ball_volume(m) * ball_volume(n - m));
}

double PolyGauss::operator()(double x) const { return q_(x) * std::exp(-0.5 * x * x); }

PolyGauss PolyGauss::derivative() const {
  return PolyGauss(q_.derivative() + q_ * Polynomial{0.0, -1.0});
}

PolyGauss polygauss_derivative(const PolyGauss& p) { return p.derivative(); }

double polygauss_eval(const PolyGauss& p, double x) { return p(x); }

}  // namespace hadrf
