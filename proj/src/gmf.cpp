#include "hadrf/gmf.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hadrf/errors.hpp"
#include "hadrf/quadrature.hpp"

namespace hadrf {

namespace {

constexpr double kScanStep = 1e-4;
constexpr double kRootTol = 1e-10;
constexpr double kInf = std::numeric_limits<double>::infinity();

double bisect(const Polynomial& q, double lo, double hi) {
  double flo = q(lo);
  for (int iter = 0; iter < 200 && hi - lo > kRootTol; ++iter) {
    double mid = 0.5 * (lo + hi);
    double fm = q(mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Roots of q on [lo, hi]: closed forms through degree 2, scan + bisection
// above that.
void piece_roots(const Polynomial& q, double lo, double hi, std::vector<double>& out) {
  const int deg = q.degree();
  if (deg <= 0) return;
  if (deg == 1) {
    double r = -q.coeffs()[0] / q.coeffs()[1];
    if (r >= lo && r <= hi) out.push_back(r);
    return;
  }
  if (deg == 2) {
    double c = q.coeffs()[0], b = q.coeffs()[1], a = q.coeffs()[2];
    double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return;
    double sq = std::sqrt(disc);
    // Numerically stable pairing.
    double q0 = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double r1 = q0 / a;
    double r2 = (q0 != 0.0) ? c / q0 : r1;
    for (double r : {std::min(r1, r2), std::max(r1, r2)})
      if (r >= lo && r <= hi) out.push_back(r);
    return;
  }
  double prev_x = lo;
  double prev_v = q(lo);
  if (prev_v == 0.0) out.push_back(lo);
  const long steps = static_cast<long>(std::ceil((hi - lo) / kScanStep));
  for (long i = 1; i <= steps; ++i) {
    double x = std::min(lo + static_cast<double>(i) * kScanStep, hi);
    double v = q(x);
    if (v == 0.0) {
      out.push_back(x);
    } else if ((prev_v < 0.0 && v > 0.0) || (prev_v > 0.0 && v < 0.0)) {
      out.push_back(bisect(q, prev_x, x));
    }
    prev_x = x;
    prev_v = v;
  }
}

}  // namespace

IntervalUnion::IntervalUnion(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    if (!(intervals_[i].a <= intervals_[i].b))
      throw std::invalid_argument("IntervalUnion: interval with a > b");
    if (i > 0 && !(intervals_[i - 1].b < intervals_[i].a))
      throw std::invalid_argument("IntervalUnion: intervals must be disjoint and ordered");
  }
}

IntervalUnion IntervalUnion::whole_line() { return IntervalUnion({{-kInf, kInf}}); }

IntervalUnion superlevel_intervals(const Piecewise1D& F, double s) {
  // Segment the clipped line at the transform's breakpoints.
  std::vector<double> cuts{-kGaussianClip};
  for (double b : F.breakpoints())
    if (b > -kGaussianClip && b < kGaussianClip) cuts.push_back(b);
  cuts.push_back(kGaussianClip);

  std::vector<double> nodes;  // candidate interval endpoints
  for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
    double lo = cuts[seg], hi = cuts[seg + 1];
    double probe = 0.5 * (lo + hi);
    // Identify the piece covering this segment through an interior probe.
    std::size_t pidx = 0;
    {
      auto bp = F.breakpoints();
      pidx = static_cast<std::size_t>(
          std::upper_bound(bp.begin(), bp.end(), probe) - bp.begin());
    }
    Polynomial q = F.piece(pidx) + Polynomial{-s};
    if (q.is_zero())
      throw numeric_error("superlevel_intervals: transform sits exactly at the level "
                          "on an interval (degenerate level)");
    piece_roots(q, lo, hi, nodes);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end(),
                          [](double a, double b) { return std::fabs(a - b) <= 1e-12; }),
              nodes.end());

  // Walk the segments between nodes and keep those where F - s >= 0.
  std::vector<double> walk{-kGaussianClip};
  for (double r : nodes)
    if (r > -kGaussianClip && r < kGaussianClip) walk.push_back(r);
  walk.push_back(kGaussianClip);

  std::vector<IntervalUnion::Interval> result;
  bool in_region = false;
  double start = 0.0;
  for (std::size_t seg = 0; seg + 1 < walk.size(); ++seg) {
    double mid = 0.5 * (walk[seg] + walk[seg + 1]);
    bool above = F(mid) >= s;
    if (above && !in_region) {
      in_region = true;
      start = walk[seg];
    } else if (!above && in_region) {
      in_region = false;
      result.push_back({start, walk[seg]});
    }
  }
  if (in_region) result.push_back({start, kGaussianClip});

  // Clip boundaries stand in for the unbounded tails.
  for (auto& iv : result) {
    if (iv.a <= -kGaussianClip) iv.a = -kInf;
    if (iv.b >= kGaussianClip) iv.b = kInf;
  }
  return IntervalUnion(std::move(result));
}

double gmf_real(int j, const IntervalUnion& set) {
  if (j < 0) throw std::invalid_argument("gmf_real: j must be nonnegative");
  double acc = 0.0;
  if (j == 0) {
    for (const auto& iv : set.intervals()) acc += gaussian_tail(iv.a) - gaussian_tail(iv.b);
    return acc;
  }
  const double sign = (j % 2 == 1) ? 1.0 : -1.0;  // (-1)^(j-1)
  for (const auto& iv : set.intervals()) {
    if (std::isfinite(iv.b)) acc += sign * hermite(j - 1, iv.b) * gaussian_density(iv.b);
    if (std::isfinite(iv.a)) acc += hermite(j - 1, iv.a) * gaussian_density(iv.a);
  }
  return acc;
}

PolyGauss chi2_gmf_kernel(int j, int k) {
  if (j < 1) throw std::invalid_argument("chi2_gmf_kernel: j must be >= 1");
  if (k < 1) throw std::invalid_argument("chi2_gmf_kernel: k must be >= 1");
  std::vector<double> mono(static_cast<std::size_t>(k), 0.0);
  mono.back() = 1.0 / (gamma_fn(0.5 * k) * std::pow(2.0, 0.5 * (k - 2)));
  PolyGauss p{Polynomial(std::move(mono))};
  for (int d = 1; d < j; ++d) p = p.derivative();
  const double sign = (j % 2 == 1) ? 1.0 : -1.0;
  return PolyGauss(p.poly() * sign);
}

double gmf_chi2(int j, double s, int k) {
  if (j < 0) throw std::invalid_argument("gmf_chi2: j must be nonnegative");
  if (k < 1) throw std::invalid_argument("gmf_chi2: k must be >= 1");
  if (j == 0) return s <= 0.0 ? 1.0 : gamma_q(0.5 * k, 0.5 * s);
  if (s <= 0.0) return 0.0;  // {F >= s} is all of R^k
  return chi2_gmf_kernel(j, k)(std::sqrt(s));
}

namespace {
constexpr double kLevelRelTol = 1e-8;
constexpr double kLevelAbsFloor = 1e-9;
}  // namespace

double gmf_integral_real(const Piecewise1D& F, int j) {
  if (j < 1) throw std::invalid_argument("gmf_integral_real: j must be >= 1");
  // Threshold range: the transform's value range over the clipped line.
  double fmax = 0.0;
  auto consider = [&](double x) { fmax = std::max(fmax, std::fabs(F(x))); };
  const int samples = 4096;
  for (int i = 0; i <= samples; ++i)
    consider(-kGaussianClip + 2.0 * kGaussianClip * i / samples);
  for (double b : F.breakpoints())
    if (b > -kGaussianClip && b < kGaussianClip) consider(b);
  if (fmax == 0.0) return 0.0;
  return integrate_adaptive(
      [&](double s) { return gmf_real(j, superlevel_intervals(F, s)); }, -fmax, fmax,
      kLevelRelTol, kLevelAbsFloor);
}

double gmf_integral_chi2(int k, int j) {
  if (j < 1) throw std::invalid_argument("gmf_integral_chi2: j must be >= 1");
  if (k < 1) throw std::invalid_argument("gmf_integral_chi2: k must be >= 1");
  const double s_max = (std::sqrt(static_cast<double>(k)) + 8.0) * (std::sqrt(static_cast<double>(k)) + 8.0);
  const PolyGauss kernel = chi2_gmf_kernel(j, k);
  return integrate_adaptive([&](double s) { return s <= 0.0 ? 0.0 : kernel(std::sqrt(s)); },
                            0.0, s_max, kLevelRelTol, kLevelAbsFloor);
}

}  // namespace hadrf
