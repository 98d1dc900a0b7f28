#pragma once

#include <span>
#include <vector>

#include "hadrf/piecewise.hpp"

namespace hadrf {

// Standard Gaussian density phi(x) = (2*pi)^(-1/2) exp(-x^2/2).
double gaussian_density(double x);

// Upper tail Psi(x) = integral of phi over [x, inf).
double gaussian_tail(double x);

// Probabilists' Hermite polynomial H_m, defined through
// H_m(x) * phi(x) = (-1)^m d^m phi / dx^m.  H_0 = 1, H_1 = x,
// H_{m+1} = x H_m - m H_{m-1}.  (The physicists' convention differs by
// scaling; everything here uses the probabilists' one.)
double hermite(int m, double x);

// Gamma function for x > 0; half-integer arguments use closed forms.
double gamma_fn(double x);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a).
double gamma_q(double a, double x);

// Volume of the unit n-ball; omega_0 = 1.
double ball_volume(int n);

// Binomial coefficient as a double (exact for the small n used here).
double binomial(int n, int m);

// Flag coefficient [n m] = C(n,m) * omega_n / (omega_m * omega_{n-m}).
double flag_coefficient(int n, int m);

// q(x) * exp(-x^2/2) for a polynomial q; closed under differentiation:
// d/dx [q e^{-x^2/2}] = (q' - x q) e^{-x^2/2}.
class PolyGauss {
 public:
  PolyGauss() = default;
  explicit PolyGauss(Polynomial q) : q_(std::move(q)) {}

  double operator()(double x) const;
  PolyGauss derivative() const;
  const Polynomial& poly() const { return q_; }

 private:
  Polynomial q_;
};

PolyGauss polygauss_derivative(const PolyGauss& p);
double polygauss_eval(const PolyGauss& p, double x);

}  // namespace hadrf
