#pragma once

#include <vector>

#include "hadrf/piecewise.hpp"
#include "hadrf/special.hpp"

namespace hadrf {

// phi underflows past |x| = 38, so endpoint searches clip there; anything
// beyond contributes below 1e-300.
inline constexpr double kGaussianClip = 38.0;

// Ordered disjoint union of closed intervals, endpoints possibly infinite.
class IntervalUnion {
 public:
  struct Interval {
    double a, b;
  };

  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> intervals);

  static IntervalUnion whole_line();

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }

 private:
  std::vector<Interval> intervals_;
};

// {F >= s} on the clipped line as a disjoint union of closed intervals.
// Roots of F = s come analytically for pieces of degree <= 2, otherwise
// from a 1e-4 scan plus bisection to 1e-10.  A piece constant at exactly s
// is a degenerate level and rejected.
IntervalUnion superlevel_intervals(const Piecewise1D& F, double s);

// Gaussian Minkowski functional of an interval union:
//   j = 0: total Gaussian measure, sum of Psi(a_i) - Psi(b_i)
//   j >= 1: sum of (-1)^(j-1) H_{j-1}(b_i) phi(b_i) + H_{j-1}(a_i) phi(a_i),
//           infinite endpoints contributing nothing.
double gmf_real(int j, const IntervalUnion& set);

// Gaussian Minkowski functional of the chi-squared superlevel set
// {|x|^2 >= s} in R^k: for s > 0 and j >= 1 the (j-1)-st derivative of
// p_k(x) = x^(k-1) e^(-x^2/2) / (Gamma(k/2) 2^((k-2)/2)) at sqrt(s), sign
// (-1)^(j-1); j = 0 is the upper chi-squared tail Q(k/2, s/2).
double gmf_chi2(int j, double s, int k);

// p_k differentiated (j-1) times, with the sign folded in; exposed so level
// integrals can reuse it across quadrature nodes.
PolyGauss chi2_gmf_kernel(int j, int k);

// Level integrals of the Minkowski functionals over thresholds, j >= 1:
// adaptive doubling Gauss-Legendre panels, relative tolerance 1e-8 with a
// 1e-9 absolute floor for vanishing integrals.
double gmf_integral_real(const Piecewise1D& F, int j);
double gmf_integral_chi2(int k, int j);

}  // namespace hadrf
