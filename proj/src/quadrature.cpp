#include "hadrf/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "hadrf/errors.hpp"

namespace hadrf {

namespace {

QuadratureRule make_gauss_legendre(int n) {
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-15) break;
    }
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

QuadratureRule make_gauss_hermite(int n) {
  // Newton iteration on the orthonormal recurrence (weight exp(-x^2)).
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  const double pim4 = 0.7511255444649425;  // pi^(-1/4)
  const int m = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < m; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[static_cast<std::size_t>(n - 1)];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[static_cast<std::size_t>(n - 2)];
    } else {
      z = 2.0 * z - rule.nodes[static_cast<std::size_t>(n - i + 1)];
    }
    double pp = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double z1 = z;
      z = z1 - p1 / pp;
      if (std::fabs(z - z1) < 1e-14) break;
    }
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = z;
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    double w = 2.0 / (pp * pp);
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    rule.weights[static_cast<std::size_t>(i)] = w;
  }
  return rule;
}

const QuadratureRule& cached(std::map<int, QuadratureRule>& cache, std::mutex& mu, int order,
                             QuadratureRule (*maker)(int)) {
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, maker(order)).first;
  return it->second;
}

}  // namespace

const QuadratureRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::map<int, QuadratureRule> cache;
  static std::mutex mu;
  return cached(cache, mu, order, make_gauss_legendre);
}

const QuadratureRule& gauss_hermite(int order) {
  if (order < 1) throw std::invalid_argument("gauss_hermite: order must be positive");
  static std::map<int, QuadratureRule> cache;
  static std::mutex mu;
  return cached(cache, mu, order, make_gauss_hermite);
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        int panel_order) {
  const QuadratureRule& rule = gauss_legendre(panel_order);
  const double width = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    double lo = a + p * width;
    double mid = lo + 0.5 * width;
    double half = 0.5 * width;
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) acc += rule.weights[q] * f(mid + half * rule.nodes[q]);
    total += acc * half;
  }
  return total;
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double abs_floor, int max_doublings, int panel_order) {
  if (!(b > a)) return 0.0;
  int panels = 4;
  double prev = integrate_panels(f, a, b, panels, panel_order);
  for (int d = 0; d < max_doublings; ++d) {
    panels *= 2;
    double cur = integrate_panels(f, a, b, panels, panel_order);
    if (std::fabs(cur - prev) <= std::max(rel_tol * std::fabs(cur), abs_floor)) return cur;
    prev = cur;
  }
  throw numeric_error("integrate_adaptive: no convergence after doubling limit");
}

double normal_expectation(const std::function<double(double)>& f) {
  const double inv_sqrt_pi = 0.5641895835477562869;
  const double sqrt2 = 1.4142135623730950488;
  auto eval = [&](int order) {
    const QuadratureRule& rule = gauss_hermite(order);
    double acc = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      acc += rule.weights[q] * f(sqrt2 * rule.nodes[q]);
    return acc * inv_sqrt_pi;
  };
  double i64 = eval(64);
  double i128 = eval(128);
  if (std::fabs(i128 - i64) <= 1e-8 * std::max(1.0, std::fabs(i128))) return i128;
  double i256 = eval(256);
  if (std::fabs(i256 - i128) <= 1e-8 * std::max(1.0, std::fabs(i256))) return i256;
  throw numeric_error("normal_expectation: Gauss-Hermite quadrature did not converge");
}

}  // namespace hadrf
