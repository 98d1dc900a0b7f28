#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "hadrf/cubical.hpp"
#include "hadrf/piecewise.hpp"

namespace hadrf {

enum class IntegralKind { lower, upper };

// Midpoint level sweep controls.  The default step is (max - min) / 400 of
// the integrand's value range; the default range is automatic (the sweep
// stops once the integrand vanishes).  An explicit range truncates the
// integral to it.
struct SweepSettings {
  std::optional<double> step;
  std::optional<std::pair<double, double>> range;
};

// Per-cell minimum vertex values grouped by cell dimension.  A cell belongs
// to the closed superlevel complex at s iff its minimum is >= s (strict for
// the open convention), so these numbers determine mu_i of every level set
// and hence the whole sweep.
class LevelProfile {
 public:
  explicit LevelProfile(const GridFunction& f);
  // Indicator profile: cells of `support` carry `value`, every other cell
  // of the full grid complex carries 0.
  LevelProfile(const GridSpec& grid, const CubicalSet& support, double value);

  int order() const { return n_; }
  double spacing() const { return h_; }
  double min_value() const { return min_; }
  double max_value() const { return max_; }

  IntrinsicVolumes domain_volumes() const;  // mu(M) of the full complex
  IntrinsicVolumes level_volumes(double s, LevelConvention convention) const;

  // Hadwiger integral for every index 0..n at once:
  //   lower: int_0^inf (mu_i{f >= s} - mu_i{f < -s}) ds
  //   upper: the strict-inequality dual
  // with the sublevel term evaluated through mu_i{f < s} = mu_i(M) -
  // mu_i{f >= s}; midpoint rule, ascending-level accumulation.
  std::vector<double> sweep(IntegralKind kind, const SweepSettings& settings) const;

 private:
  int n_ = 0;
  double h_ = 1.0;
  double min_ = 0.0, max_ = 0.0;
  std::vector<std::vector<std::pair<double, double>>> entries_;  // (value, count) per dim
  std::vector<double> totals_;                                   // cell count per dim
};

// Exact level sum for nonnegative integer-valued functions:
// sum_{s=1..max f} mu_i{f >= s} over closed excursion complexes.
double finite_image_integral(const GridFunction& f, int index);

double lower_integral(const GridFunction& f, int index, const SweepSettings& settings = {});
double upper_integral(const GridFunction& f, int index, const SweepSettings& settings = {});
std::vector<double> lower_integral_all(const GridFunction& f, const SweepSettings& settings = {});
std::vector<double> upper_integral_all(const GridFunction& f, const SweepSettings& settings = {});

// Valuation decomposed against the Hadwiger integrals: v(f) = sum_i
// integral of (c_i o f) d mu_i, all c_i with c_i(0) = 0.
class ValuationSpec {
 public:
  ValuationSpec(std::vector<Piecewise1D> components, IntegralKind continuity);

  const std::vector<Piecewise1D>& components() const { return c_; }
  IntegralKind continuity() const { return kind_; }

 private:
  std::vector<Piecewise1D> c_;
  IntegralKind kind_;
};

double valuation_eval(const ValuationSpec& v, const GridFunction& f,
                      const SweepSettings& settings = {});
// v applied to the scaled indicator r * 1_A of a (possibly non-closed) cell
// set A inside the full complex of its grid.
double valuation_eval(const ValuationSpec& v, const CubicalSet& support, double r,
                      const SweepSettings& settings = {});

}  // namespace hadrf
