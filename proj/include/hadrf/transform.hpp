#pragma once

#include <span>

#include "hadrf/grid.hpp"
#include "hadrf/piecewise.hpp"

namespace hadrf {

// Pointwise map F: R^k -> R turning a vector-valued Gaussian field f into
// the Gaussian-related field g = F o f.
struct TransformSpec {
  enum class Kind { identity, chi2, piecewise1d };

  Kind kind = Kind::identity;
  Piecewise1D pw;  // only for piecewise1d

  static TransformSpec identity() { return {Kind::identity, {}}; }
  static TransformSpec chi_squared() { return {Kind::chi2, {}}; }
  static TransformSpec piecewise(Piecewise1D f) { return {Kind::piecewise1d, std::move(f)}; }

  // identity and piecewise1d act on scalar fields only.
  bool accepts_components(int k) const {
    return kind == Kind::chi2 ? k >= 1 : k == 1;
  }
};

// Vertexwise application; components must match the transform's arity.
GridFunction apply_transform(const TransformSpec& transform, std::span<const GridFunction> fields);

// E[F(X)] for X standard normal on R^k: 0 for the identity, k for chi2,
// Gauss-Hermite quadrature for piecewise transforms.
double transform_mean(const TransformSpec& transform, int k);

}  // namespace hadrf
