// Statistical checks of the field generator against its covariance model:
// marginals, lag correlation, isotropy, crop margin, and the spectral
// moment's finite-difference oracle.  Seeds are fixed, so every run either
// passes or fails identically.

#include <cmath>
#include <cstdio>
#include <vector>

#include "hadrf/random_field.hpp"

using namespace hadrf;

namespace {

int failures = 0;

void check(bool ok, const char* label, double value, double bound) {
  std::printf("%s  %-52s value=%.5f bound=%.5f\n", ok ? "pass" : "FAIL", label, value, bound);
  if (!ok) ++failures;
}

}  // namespace

int main() {
  {
    // Marginal law at a fixed vertex and correlation at lag = length scale.
    FieldSpec spec{GridSpec({17, 17}, 0.1), CovarianceModel{0.3}, 1, 20240808};
    const int n_samples = 2000;
    const std::size_t a = 8 * 17 + 8;
    const std::size_t b = 8 * 17 + 11;  // 3 vertices = one length scale apart
    const std::size_t c = 11 * 17 + 8;  // same lag along the other axis
    double sum = 0, sum_sq = 0, cross_ab = 0, cross_ac = 0;
    for (int i = 0; i < n_samples; ++i) {
      auto f = simulate(spec, static_cast<std::uint64_t>(i));
      double va = f[0].value(a);
      sum += va;
      sum_sq += va * va;
      cross_ab += va * f[0].value(b);
      cross_ac += va * f[0].value(c);
    }
    double mean = sum / n_samples;
    double var = sum_sq / n_samples - mean * mean;
    check(std::fabs(mean) <= 4.0 / std::sqrt(n_samples), "marginal mean near 0 (4 sigma)",
          mean, 4.0 / std::sqrt(n_samples));
    check(std::fabs(var - 1.0) <= 0.1, "marginal variance near 1 (0.1)", var, 0.1);

    const double target = std::exp(-0.5);
    const double corr_se = (1.0 - target * target) / std::sqrt(n_samples);
    double corr_x = cross_ab / n_samples / var;
    double corr_y = cross_ac / n_samples / var;
    check(std::fabs(corr_x - target) <= 3.0 * corr_se, "lag-l correlation (axis 1, 3 sigma)",
          corr_x, target);
    check(std::fabs(corr_y - target) <= 3.0 * corr_se, "lag-l correlation (axis 0, 3 sigma)",
          corr_y, target);
    check(std::fabs(corr_x - corr_y) <= 3.0 * std::sqrt(2.0) * corr_se,
          "isotropy: axis correlations agree (3 sigma)", corr_x - corr_y,
          3.0 * std::sqrt(2.0) * corr_se);
  }

  {
    // Stationarity across the whole window.
    FieldSpec spec{GridSpec({9, 9}, 0.1), CovarianceModel{0.3}, 1, 31415926};
    const int n_samples = 1200;
    const std::size_t nv = spec.grid.vertex_count();
    std::vector<double> sum(nv, 0.0), sum_sq(nv, 0.0);
    double edge_cross = 0.0;
    const std::size_t left = 4 * 9 + 0, right = 4 * 9 + 8;
    for (int i = 0; i < n_samples; ++i) {
      auto f = simulate(spec, static_cast<std::uint64_t>(i));
      for (std::size_t v = 0; v < nv; ++v) {
        sum[v] += f[0].value(v);
        sum_sq[v] += f[0].value(v) * f[0].value(v);
      }
      edge_cross += f[0].value(left) * f[0].value(right);
    }
    double worst_mean = 0.0, worst_var = 0.0;
    for (std::size_t v = 0; v < nv; ++v) {
      double m = sum[v] / n_samples;
      double var = sum_sq[v] / n_samples - m * m;
      worst_mean = std::max(worst_mean, std::fabs(m));
      worst_var = std::max(worst_var, std::fabs(var - 1.0));
    }
    check(worst_mean <= 4.0 / std::sqrt(n_samples), "every-vertex mean near 0 (4 sigma)",
          worst_mean, 4.0 / std::sqrt(n_samples));
    check(worst_var <= 4.0 * std::sqrt(2.0 / n_samples), "every-vertex variance near 1 (4 sigma)",
          worst_var, 4.0 * std::sqrt(2.0 / n_samples));

    // No torus wrap leakage across the cropped window.
    CovarianceModel cov{0.3};
    double extent = 0.8;
    double bound = cov(extent) + 3.0 / std::sqrt(n_samples);
    check(std::fabs(edge_cross / n_samples) <= bound, "opposite-edge correlation (crop margin)",
          edge_cross / n_samples, bound);
  }

  {
    // Spectral moment against the finite-difference derivative variance.
    for (double l : {0.4, 2.0}) {
      double h = l / 20.0;
      FieldSpec spec{GridSpec({5, 5}, h), CovarianceModel{l}, 1, 2718281};
      const int n_samples = 3000;
      const std::size_t plus = 2 * 5 + 3, minus = 2 * 5 + 1;
      double sum = 0, sum_sq = 0;
      for (int i = 0; i < n_samples; ++i) {
        auto f = simulate(spec, static_cast<std::uint64_t>(i));
        double d = (f[0].value(plus) - f[0].value(minus)) / (2.0 * h);
        sum += d;
        sum_sq += d * d;
      }
      double mean = sum / n_samples;
      double var = sum_sq / n_samples - mean * mean;
      double lambda2 = second_spectral_moment(spec.cov);
      double tol = 3.0 * std::sqrt(2.0 / n_samples) * lambda2 + 0.01 * lambda2;
      char label[96];
      std::snprintf(label, sizeof label, "derivative variance vs lambda2 (l=%.1f)", l);
      check(std::fabs(var - lambda2) <= tol, label, var, lambda2);
    }
  }

  std::printf(failures == 0 ? "all field statistics checks passed\n"
                            : "%d field statistics checks FAILED\n",
              failures);
  return failures == 0 ? 0 : 1;
}
