#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace hadrf {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1, 1]; results are cached per order.
const QuadratureRule& gauss_legendre(int order);

// Gauss-Hermite rule with weight exp(-x^2) on the real line (cached).
const QuadratureRule& gauss_hermite(int order);

// Composite Gauss-Legendre over [a, b], panel count doubling from 4 until
// |I_2p - I_p| <= max(rel_tol * |I_2p|, abs_floor).  Throws numeric_error
// after max_doublings.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-8, double abs_floor = 1e-12,
                          int max_doublings = 20, int panel_order = 16);

// Single fixed composite pass (no convergence control).
double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        int panel_order = 16);

// E[f(X)] for X standard normal, via Gauss-Hermite with node doubling
// 64 -> 128 -> 256; throws numeric_error if the last doubling moves the
// value by more than 1e-8 * max(1, |I|).
double normal_expectation(const std::function<double(double)>& f);

}  // namespace hadrf
