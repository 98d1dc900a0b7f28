#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hadrf/grid.hpp"

namespace hadrf {

// Stationary isotropic squared-exponential covariance with unit variance:
// C(r) = exp(-r^2 / (2 l^2)).
struct CovarianceModel {
  double length_scale = 1.0;

  double operator()(double r) const;
};

// Second spectral moment lambda_2 = -C''(0); 1 / l^2 for the squared
// exponential.  Sets the scale of the metric the field induces on its
// domain: lengths scale by sqrt(lambda_2).
double second_spectral_moment(const CovarianceModel& cov);

// One simulation campaign's field description.  Samples are generated by
// spectral synthesis on an enlarged torus (periodized covariance, white
// noise filtered by the square root of the eigenvalues) and cropped, which
// keeps the marginal law exactly standard normal at every vertex.
struct FieldSpec {
  GridSpec grid;
  CovarianceModel cov;
  int components = 1;
  std::uint64_t seed = 0;

  // Soft diagnostics (e.g. spacing too coarse for the length scale);
  // violations of hard invariants throw from simulate().
  std::vector<std::string> warnings() const;
};

// Torus vertex counts: at least grid extent plus a 6 * length_scale margin
// per axis, rounded up to a power of two.
std::vector<int> embedding_torus_dims(const GridSpec& grid, const CovarianceModel& cov);

// Eigenvalues of the periodized covariance on the torus (the real spectrum
// of its circulant operator, half-spectrum layout).
std::vector<double> embedding_eigenvalues(const std::vector<int>& torus_dims, double spacing,
                                          const CovarianceModel& cov);

// Throws numeric_error if any eigenvalue is below -1e-10 * max; clamps the
// remaining tiny negatives to zero.
void check_embedding(std::vector<double>& eigenvalues);

// k i.i.d. zero-mean unit-variance Gaussian fields on the target grid;
// a pure function of (spec.seed, sample_index, component).
std::vector<GridFunction> simulate(const FieldSpec& spec, std::uint64_t sample_index);

}  // namespace hadrf
