#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <vector>

#include "hadrf/gkf.hpp"
#include "hadrf/gmf.hpp"
#include "hadrf/special.hpp"

using namespace hadrf;

namespace {

DomainSummary unit_square(double lambda2 = 1.0) {
  return {box_intrinsic_volumes(std::vector<double>{1.0, 1.0}), lambda2};
}

}  // namespace

TEST_CASE("metric scaling of domain volumes") {
  auto id = metric_scale(unit_square(1.0));
  CHECK(id[0] == 1.0);
  CHECK(id[1] == 2.0);
  CHECK(id[2] == 1.0);

  auto scaled = metric_scale(unit_square(100.0));
  CHECK(scaled[0] == doctest::Approx(1.0));
  CHECK(scaled[1] == doctest::Approx(20.0));
  CHECK(scaled[2] == doctest::Approx(100.0));

  DomainSummary rect{box_intrinsic_volumes(std::vector<double>{2.0, 1.0}), 4.0};
  auto m = metric_scale(rect);
  CHECK(m[0] == doctest::Approx(1.0));
  CHECK(m[1] == doctest::Approx(6.0));
  CHECK(m[2] == doctest::Approx(8.0));
}

TEST_CASE("expected intrinsic volumes of gaussian excursion sets") {
  auto d = unit_square();
  auto F = TransformSpec::identity();
  CHECK(expected_intrinsic_volume(0, d, F, 1, 0.0) ==
        doctest::Approx(0.5 + 1.0 / M_PI).epsilon(1e-12));
  CHECK(expected_intrinsic_volume(2, d, F, 1, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::fabs(expected_intrinsic_volume(0, d, F, 1, 38.0)) <= 1e-12);
  // Deep negative level recovers the whole domain.
  for (int i = 0; i <= 2; ++i)
    CHECK(expected_intrinsic_volume(i, d, F, 1, -38.0) == doctest::Approx(d.ivs[i]).epsilon(1e-12));
  CHECK_THROWS_AS(expected_intrinsic_volume(3, d, F, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(expected_intrinsic_volume(0, d, F, 2, 0.0), std::invalid_argument);
}

TEST_CASE("expected level-sweep integrals") {
  auto d = unit_square();
  CHECK(expected_hadwiger(0, d, TransformSpec::identity(), 1) ==
        doctest::Approx(2.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-12));
  CHECK(expected_hadwiger(2, d, TransformSpec::identity(), 1) == 0.0);
  CHECK(expected_hadwiger(0, d, TransformSpec::chi_squared(), 2) ==
        doctest::Approx(2.0 + 2.0 + 1.0 / M_PI).epsilon(1e-12));
  // Both continuity kinds share one expectation.
  CHECK(expected_hadwiger(1, d, TransformSpec::chi_squared(), 3, IntegralKind::lower) ==
        expected_hadwiger(1, d, TransformSpec::chi_squared(), 3, IntegralKind::upper));
}

TEST_CASE("top index degenerates to the mean") {
  for (double l2 : {1.0, 25.0}) {
    auto d = unit_square(l2);
    CHECK(expected_hadwiger(2, d, TransformSpec::identity(), 1) == 0.0);
    CHECK(expected_hadwiger(2, d, TransformSpec::chi_squared(), 4) == 4.0 * d.ivs[2]);
  }
}

TEST_CASE("domain doubling scales each term by 2^(i+j)") {
  auto F = TransformSpec::chi_squared();
  DomainSummary d1{box_intrinsic_volumes(std::vector<double>{1.0, 1.0}), 1.0};
  DomainSummary d2{box_intrinsic_volumes(std::vector<double>{2.0, 2.0}), 1.0};
  for (int i = 0; i <= 2; ++i) CHECK(d2.ivs[i] == std::pow(2.0, i) * d1.ivs[i]);
  const double mean = 2.0;  // E(g) for two squared components
  // At i = 1 in the plane only the j = 1 term carries a level integral, so
  // stripping the mean term must leave an exact factor 2^{i+j} = 4.
  double small_j1 = expected_hadwiger(1, d1, F, 2) - mean * d1.ivs[1];
  double big_j1 = expected_hadwiger(1, d2, F, 2) - mean * d2.ivs[1];
  CHECK(big_j1 == doctest::Approx(4.0 * small_j1).epsilon(1e-13));
  // At i = n there is no level term at all.
  CHECK(expected_hadwiger(2, d2, F, 2) == mean * d2.ivs[2]);
}

TEST_CASE("level quadrature reproduces the closed forms") {
  // One cell of the full consistency matrix per transform; the acceptance
  // suite runs the whole grid.
  auto d = unit_square();
  for (int i = 0; i <= 2; ++i) {
    double closed = expected_hadwiger(i, d, TransformSpec::identity(), 1);
    double quad = expected_hadwiger_by_level_quadrature(i, d, TransformSpec::identity(), 1);
    CHECK(quad == doctest::Approx(closed).epsilon(1e-6).scale(1.0));
  }
  double closed = expected_hadwiger(0, d, TransformSpec::chi_squared(), 2);
  double quad = expected_hadwiger_by_level_quadrature(0, d, TransformSpec::chi_squared(), 2);
  CHECK(quad == doctest::Approx(closed).epsilon(1e-6));
}

TEST_CASE("expected valuations decompose over the indices") {
  auto d = unit_square();
  const Piecewise1D zero{};
  const Piecewise1D x = Piecewise1D::identity();

  ValuationSpec v0({x, zero, zero}, IntegralKind::lower);
  CHECK(expected_valuation(v0, d, TransformSpec::identity(), 1) ==
        doctest::Approx(2.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-6));

  ValuationSpec all({x, x, x}, IntegralKind::lower);
  double expect = 0.0;
  for (int i = 0; i <= 2; ++i) expect += expected_hadwiger(i, d, TransformSpec::identity(), 1);
  CHECK(expected_valuation(all, d, TransformSpec::identity(), 1) ==
        doctest::Approx(expect).epsilon(1e-6));

  ValuationSpec none({zero, zero, zero}, IntegralKind::lower);
  CHECK(expected_valuation(none, d, TransformSpec::identity(), 1) == 0.0);

  // chi-squared composites beyond the identity are out of the supported
  // superlevel families.
  ValuationSpec vsq({Piecewise1D{Polynomial{0.0, 0.0, 1.0}}, zero, zero}, IntegralKind::lower);
  CHECK_THROWS_AS(expected_valuation(vsq, d, TransformSpec::chi_squared(), 2),
                  std::invalid_argument);
  CHECK(expected_valuation(all, d, TransformSpec::chi_squared(), 2) ==
        doctest::Approx(expected_hadwiger(0, d, TransformSpec::chi_squared(), 2) +
                        expected_hadwiger(1, d, TransformSpec::chi_squared(), 2) +
                        expected_hadwiger(2, d, TransformSpec::chi_squared(), 2))
            .epsilon(1e-12));

  // Squared gaussian via the piecewise route matches chi-squared at k = 1.
  CHECK(expected_valuation(vsq, d, TransformSpec::identity(), 1) ==
        doctest::Approx(expected_hadwiger(0, d, TransformSpec::chi_squared(), 1)).epsilon(1e-5));
}
