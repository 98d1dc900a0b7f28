#pragma once

#include "hadrf/cubical.hpp"
#include "hadrf/sweep.hpp"
#include "hadrf/transform.hpp"

namespace hadrf {

// Everything the kinematic expectation formulas need about the domain and
// the field: Euclidean intrinsic volumes of the box M, and the second
// spectral moment of the field's covariance.
struct DomainSummary {
  IntrinsicVolumes ivs;
  double lambda2 = 1.0;
};

// Intrinsic volumes of M under the field-induced metric: for an isotropic
// field the metric is Euclidean scaled by sqrt(lambda2), so entry j picks
// up lambda2^(j/2).
IntrinsicVolumes metric_scale(const DomainSummary& d);

// Expected Euclidean intrinsic volume of the excursion set {F o f >= s}:
//   sum_{j=0}^{n-i} [i+j, j] (2 pi)^{-j/2} lambda2^{j/2} mu_{i+j}(M) M_j{F >= s}.
// The lambda2^{j/2} weight is the metric-scaled mu_{i+j} normalized back to
// the Euclidean mu_i measured on the excursion set.
double expected_intrinsic_volume(int i, const DomainSummary& d, const TransformSpec& F, int k,
                                 double s);

// Expected Hadwiger integral of g = F o f against mu_i:
//   mu_i(M) E(g) + sum_{j=1}^{n-i} [i+j, j] (2 pi)^{-j/2} lambda2^{j/2}
//                   mu_{i+j}(M) integral_R M_j{F >= s} ds.
// The expectation does not distinguish the lower and upper kinds; `kind`
// is accepted for symmetry and ignored.
double expected_hadwiger(int i, const DomainSummary& d, const TransformSpec& F, int k,
                         IntegralKind kind = IntegralKind::lower);

// The same expectation assembled the long way: threshold quadrature of
// expected_intrinsic_volume,
//   int_0^inf E mu_i{g >= s} ds - int_{-inf}^0 (mu_i(M) - E mu_i{g >= s}) ds.
// Exercises the level-set algebra behind expected_hadwiger end to end.
double expected_hadwiger_by_level_quadrature(int i, const DomainSummary& d,
                                             const TransformSpec& F, int k);

// Expected value of a Hadwiger-decomposed valuation of g = F o f:
// sum_i of expected_hadwiger for the composite transform c_i o F.
double expected_valuation(const ValuationSpec& v, const DomainSummary& d, const TransformSpec& F,
                          int k);

}  // namespace hadrf
