#pragma once

#include "hadrf/cubical.hpp"

namespace hadrf {

// Orientation-averaged length ratio of the midpoint marching-squares
// contour to the true boundary is (8*sqrt(2) - 8) / pi; dividing it out
// makes the perimeter estimate unbiased for isotropic boundaries.
inline constexpr double kIsotropicPerimeterCalibration = 0.94805944896521554;

// Bias-reduced mu_1 estimator for a 2D closed pixel complex: half the
// calibrated length of the marching-squares contour of the pixel mask,
// crossings pinned to edge midpoints.  Axis-aligned rectangles come out
// slightly low (cut corners plus the isotropic calibration); smooth
// isotropic boundaries converge to the true half-perimeter.
double polygonized_mu1(const CubicalSet& set);

// Raw midpoint-contour length, uncalibrated (exposed for tests).
double marching_squares_perimeter(const CubicalSet& set);

}  // namespace hadrf
