#include "hadrf/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hadrf {

namespace {

std::vector<std::size_t> strides_of(std::span<const int> extents) {
  std::vector<std::size_t> s(extents.size(), 1);
  for (std::size_t a = extents.size() - 1; a-- > 0;)
    s[a] = s[a + 1] * static_cast<std::size_t>(extents[a + 1]);
  return s;
}

// Largest j >= 0 with (j + 0.5) * step <= v (strict for open); -1 if none.
long pos_cutoff(double v, double step, bool strict) {
  long j = static_cast<long>(std::floor(v / step - 0.5));
  while ((static_cast<double>(j) + 1.5) * step <= v) ++j;
  while (j >= 0 && (static_cast<double>(j) + 0.5) * step > v) --j;
  if (strict && j >= 0 && (static_cast<double>(j) + 0.5) * step == v) --j;
  return j;
}

// Smallest j >= 0 with -(j + 0.5) * step <= v (strict: < v).
long neg_cutoff(double v, double step, bool strict) {
  long j = static_cast<long>(std::ceil(-v / step - 0.5));
  if (j < 0) j = 0;
  while (-(static_cast<double>(j) + 0.5) * step > v) ++j;
  while (j > 0 && -(static_cast<double>(j) - 0.5) * step <= v) --j;
  if (strict && -(static_cast<double>(j) + 0.5) * step == v) ++j;
  return j;
}

}  // namespace

LevelProfile::LevelProfile(const GridFunction& f) {
  const GridSpec& g = f.grid();
  n_ = g.dimension();
  h_ = g.spacing;
  min_ = f.min_value();
  max_ = f.max_value();
  entries_.assign(static_cast<std::size_t>(n_) + 1, {});
  totals_.assign(static_cast<std::size_t>(n_) + 1, 0.0);

  const auto vstr = strides_of(g.dims);
  auto values = f.values();
  for (int t = 0; t < (1 << n_); ++t) {
    const int m = __builtin_popcount(static_cast<unsigned>(t));
    std::vector<std::size_t> corners{0};
    std::vector<int> extents(g.dims);
    for (int a = 0; a < n_; ++a) {
      if (!(t & (1 << a))) continue;
      --extents[static_cast<std::size_t>(a)];
      std::size_t sz = corners.size();
      for (std::size_t c = 0; c < sz; ++c)
        corners.push_back(corners[c] + vstr[static_cast<std::size_t>(a)]);
    }
    std::size_t total = 1;
    for (int e : extents) total *= static_cast<std::size_t>(e);
    auto& bucket = entries_[static_cast<std::size_t>(m)];
    bucket.reserve(bucket.size() + total);
    totals_[static_cast<std::size_t>(m)] += static_cast<double>(total);

    std::vector<int> idx(static_cast<std::size_t>(n_), 0);
    for (std::size_t flat = 0; flat < total; ++flat) {
      std::size_t base = 0;
      for (std::size_t a = 0; a < vstr.size(); ++a)
        base += vstr[a] * static_cast<std::size_t>(idx[a]);
      double mn = values[base + corners[0]];
      for (std::size_t c = 1; c < corners.size(); ++c)
        mn = std::min(mn, values[base + corners[c]]);
      bucket.emplace_back(mn, 1.0);
      for (std::size_t a = idx.size(); a-- > 0;) {
        if (++idx[a] < extents[a]) break;
        idx[a] = 0;
      }
    }
  }
}

LevelProfile::LevelProfile(const GridSpec& grid, const CubicalSet& support, double value) {
  if (!(support.grid() == grid))
    throw std::invalid_argument("LevelProfile: support lives on a different grid");
  n_ = grid.dimension();
  h_ = grid.spacing;
  min_ = std::min(0.0, value);
  max_ = std::max(0.0, value);
  entries_.assign(static_cast<std::size_t>(n_) + 1, {});
  totals_.assign(static_cast<std::size_t>(n_) + 1, 0.0);

  const auto in_support = support.counts_by_dim();
  CubicalSet whole = CubicalSet::full(grid);
  const auto all = whole.counts_by_dim();
  for (int m = 0; m <= n_; ++m) {
    const double a = static_cast<double>(in_support[static_cast<std::size_t>(m)]);
    const double rest = static_cast<double>(all[static_cast<std::size_t>(m)]) - a;
    totals_[static_cast<std::size_t>(m)] = a + rest;
    if (a > 0) entries_[static_cast<std::size_t>(m)].emplace_back(value, a);
    if (rest > 0) entries_[static_cast<std::size_t>(m)].emplace_back(0.0, rest);
  }
}

IntrinsicVolumes LevelProfile::domain_volumes() const {
  IntrinsicVolumes iv(n_);
  for (int i = 0; i <= n_; ++i) {
    double acc = 0.0;
    for (int m = i; m <= n_; ++m)
      acc += totals_[static_cast<std::size_t>(m)] * cell_weight(m, i, h_);
    iv[i] = acc;
  }
  return iv;
}

IntrinsicVolumes LevelProfile::level_volumes(double s, LevelConvention convention) const {
  std::vector<double> counts(static_cast<std::size_t>(n_) + 1, 0.0);
  for (int m = 0; m <= n_; ++m) {
    double c = 0.0;
    for (const auto& [v, cnt] : entries_[static_cast<std::size_t>(m)]) {
      if (convention == LevelConvention::closed ? (v >= s) : (v > s)) c += cnt;
    }
    counts[static_cast<std::size_t>(m)] = c;
  }
  IntrinsicVolumes iv(n_);
  for (int i = 0; i <= n_; ++i) {
    double acc = 0.0;
    for (int m = i; m <= n_; ++m)
      acc += counts[static_cast<std::size_t>(m)] * cell_weight(m, i, h_);
    iv[i] = acc;
  }
  return iv;
}

std::vector<double> LevelProfile::sweep(IntegralKind kind, const SweepSettings& settings) const {
  const bool strict = (kind == IntegralKind::upper);
  double step;
  if (settings.step) {
    step = *settings.step;
    if (!(step > 0.0)) throw std::invalid_argument("sweep: step must be positive");
  } else {
    double range = max_ - min_;
    step = (range > 0.0 ? range : std::max(std::fabs(max_), 1.0)) / 400.0;
  }
  double lo_clip = settings.range ? settings.range->first
                                  : -std::numeric_limits<double>::infinity();
  double hi_clip = settings.range ? settings.range->second
                                  : std::numeric_limits<double>::infinity();

  // Positive midpoints s_j = (j + 0.5) step, 0 <= j < jpos; the integrand
  // vanishes beyond max f.
  double pos_top = std::min(max_, hi_clip);
  long jpos = pos_top > 0.0 ? pos_cutoff(pos_top, step, false) + 1 : 0;
  // Negative midpoints -(j + 0.5) step, 0 <= j < jneg; the integrand
  // vanishes at or below min f.
  double neg_bottom = std::max(min_, lo_clip);
  long jneg = neg_bottom < 0.0 ? neg_cutoff(neg_bottom, step, true) : 0;
  if (jpos + jneg > 50'000'000)
    throw std::invalid_argument("sweep: step too small for the value range");

  const auto np1 = static_cast<std::size_t>(n_) + 1;
  std::vector<std::vector<double>> posbins(np1), negbins(np1);
  for (auto& b : posbins) b.assign(static_cast<std::size_t>(jpos), 0.0);
  for (auto& b : negbins) b.assign(static_cast<std::size_t>(jneg), 0.0);

  for (int m = 0; m <= n_; ++m) {
    for (const auto& [v, cnt] : entries_[static_cast<std::size_t>(m)]) {
      if (jpos > 0) {
        long jc = pos_cutoff(v, step, strict);
        if (jc >= 0) posbins[static_cast<std::size_t>(m)]
                            [static_cast<std::size_t>(std::min(jc, jpos - 1))] += cnt;
      }
      if (jneg > 0) {
        long j0 = neg_cutoff(v, step, strict);
        if (j0 < jneg) negbins[static_cast<std::size_t>(m)][static_cast<std::size_t>(j0)] += cnt;
      }
    }
  }

  std::vector<double> weights(np1 * np1);
  for (int m = 0; m <= n_; ++m)
    for (int i = 0; i <= n_; ++i)
      weights[static_cast<std::size_t>(m) * np1 + static_cast<std::size_t>(i)] =
          (m >= i) ? cell_weight(m, i, h_) : 0.0;
  const IntrinsicVolumes domain = domain_volumes();

  std::vector<double> result(np1, 0.0);
  // A cell with value v sits in the superlevel complex at level -(j+0.5)step
  // for every j >= its cutoff, so the per-level counts are prefix sums.
  for (int m = 0; m <= n_; ++m)
    for (long j = 1; j < jneg; ++j)
      negbins[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] +=
          negbins[static_cast<std::size_t>(m)][static_cast<std::size_t>(j - 1)];
  // Ascending levels: negative side from the bottom up, then positive.
  for (long j = jneg; j-- > 0;) {
    for (int i = 0; i <= n_; ++i) {
      double g = 0.0;
      for (int m = i; m <= n_; ++m)
        g += negbins[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] *
             weights[static_cast<std::size_t>(m) * np1 + static_cast<std::size_t>(i)];
      result[static_cast<std::size_t>(i)] -= (domain[i] - g) * step;
    }
  }
  std::vector<std::vector<double>> possuffix(np1);
  for (int m = 0; m <= n_; ++m) {
    auto& suf = possuffix[static_cast<std::size_t>(m)];
    suf.assign(static_cast<std::size_t>(jpos), 0.0);
    double acc = 0.0;
    for (long j = jpos; j-- > 0;) {
      acc += posbins[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)];
      suf[static_cast<std::size_t>(j)] = acc;
    }
  }
  for (long j = 0; j < jpos; ++j) {
    for (int i = 0; i <= n_; ++i) {
      double g = 0.0;
      for (int m = i; m <= n_; ++m)
        g += possuffix[static_cast<std::size_t>(m)][static_cast<std::size_t>(j)] *
             weights[static_cast<std::size_t>(m) * np1 + static_cast<std::size_t>(i)];
      result[static_cast<std::size_t>(i)] += g * step;
    }
  }
  return result;
}

double finite_image_integral(const GridFunction& f, int index) {
  const int n = f.grid().dimension();
  if (index < 0 || index > n) throw std::invalid_argument("finite_image_integral: bad index");
  long max_level = 0;
  for (double v : f.values()) {
    if (v < -1e-9 || std::fabs(v - std::round(v)) > 1e-9)
      throw std::invalid_argument(
          "finite_image_integral: values must be nonnegative integers");
    max_level = std::max(max_level, static_cast<long>(std::llround(v)));
  }
  double acc = 0.0;
  for (long s = 1; s <= max_level; ++s) {
    CubicalSet level = excursion_complex(f, static_cast<double>(s), LevelConvention::closed);
    acc += intrinsic_volumes(level)[index];
  }
  return acc;
}

namespace {
std::vector<double> sweep_of(const GridFunction& f, IntegralKind kind,
                             const SweepSettings& settings) {
  return LevelProfile(f).sweep(kind, settings);
}
}  // namespace

double lower_integral(const GridFunction& f, int index, const SweepSettings& settings) {
  const int n = f.grid().dimension();
  if (index < 0 || index > n) throw std::invalid_argument("lower_integral: bad index");
  return sweep_of(f, IntegralKind::lower, settings)[static_cast<std::size_t>(index)];
}

double upper_integral(const GridFunction& f, int index, const SweepSettings& settings) {
  const int n = f.grid().dimension();
  if (index < 0 || index > n) throw std::invalid_argument("upper_integral: bad index");
  return sweep_of(f, IntegralKind::upper, settings)[static_cast<std::size_t>(index)];
}

std::vector<double> lower_integral_all(const GridFunction& f, const SweepSettings& settings) {
  return sweep_of(f, IntegralKind::lower, settings);
}

std::vector<double> upper_integral_all(const GridFunction& f, const SweepSettings& settings) {
  return sweep_of(f, IntegralKind::upper, settings);
}

ValuationSpec::ValuationSpec(std::vector<Piecewise1D> components, IntegralKind continuity)
    : c_(std::move(components)), kind_(continuity) {
  for (const auto& ci : c_) {
    if (std::fabs(ci(0.0)) > 1e-12)
      throw std::invalid_argument("ValuationSpec: every component must vanish at 0");
  }
}

double valuation_eval(const ValuationSpec& v, const GridFunction& f,
                      const SweepSettings& settings) {
  const int n = f.grid().dimension();
  if (v.components().size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("valuation_eval: need one component per index 0..n");
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    const Piecewise1D& ci = v.components()[static_cast<std::size_t>(i)];
    if (ci.is_zero()) continue;
    std::vector<double> vals(f.values().size());
    for (std::size_t j = 0; j < vals.size(); ++j) vals[j] = ci(f.value(j));
    GridFunction composed(f.grid(), std::move(vals));
    total += (v.continuity() == IntegralKind::lower
                  ? lower_integral(composed, i, settings)
                  : upper_integral(composed, i, settings));
  }
  return total;
}

double valuation_eval(const ValuationSpec& v, const CubicalSet& support, double r,
                      const SweepSettings& settings) {
  const int n = support.dimension();
  if (v.components().size() != static_cast<std::size_t>(n) + 1)
    throw std::invalid_argument("valuation_eval: need one component per index 0..n");
  double total = 0.0;
  for (int i = 0; i <= n; ++i) {
    const Piecewise1D& ci = v.components()[static_cast<std::size_t>(i)];
    if (ci.is_zero()) continue;
    LevelProfile profile(support.grid(), support, ci(r));
    total += profile.sweep(v.continuity(), settings)[static_cast<std::size_t>(i)];
  }
  return total;
}

}  // namespace hadrf
