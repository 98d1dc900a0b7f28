#include "hadrf/random_field.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "hadrf/errors.hpp"
#include "hadrf/rng.hpp"

namespace hadrf {

double CovarianceModel::operator()(double r) const {
  const double l = length_scale;
  return std::exp(-0.5 * (r / l) * (r / l));
}

double second_spectral_moment(const CovarianceModel& cov) {
  if (!(cov.length_scale > 0.0))
    throw std::invalid_argument("second_spectral_moment: length scale must be positive");
  return 1.0 / (cov.length_scale * cov.length_scale);
}

std::vector<std::string> FieldSpec::warnings() const {
  std::vector<std::string> out;
  if (grid.spacing > cov.length_scale / 5.0) {
    std::ostringstream msg;
    msg << "grid spacing " << grid.spacing << " is coarse for length scale "
        << cov.length_scale << " (recommend h <= l/5)";
    out.push_back(msg.str());
  }
  return out;
}

namespace {

// FFTW planning is not thread safe; execution of a ready plan is.
std::mutex& fftw_mutex() {
  static std::mutex mu;
  return mu;
}

int next_pow2(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

struct FftArrays {
  std::vector<int> dims;
  std::size_t real_count = 0;
  std::size_t complex_count = 0;
};

FftArrays layout_of(const std::vector<int>& torus_dims) {
  FftArrays a;
  a.dims = torus_dims;
  a.real_count = 1;
  for (int d : torus_dims) a.real_count *= static_cast<std::size_t>(d);
  a.complex_count = a.real_count / static_cast<std::size_t>(torus_dims.back()) *
                    (static_cast<std::size_t>(torus_dims.back()) / 2 + 1);
  return a;
}

// Forward real-to-complex transform of `in`; result written to `out`.
void fft_r2c(const std::vector<int>& dims, double* in, fftw_complex* out) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_r2c(static_cast<int>(dims.size()), dims.data(), in, out, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(fftw_mutex());
  fftw_destroy_plan(plan);
}

void fft_c2r(const std::vector<int>& dims, fftw_complex* in, double* out) {
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_mutex());
    plan = fftw_plan_dft_c2r(static_cast<int>(dims.size()), dims.data(), in, out, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(fftw_mutex());
  fftw_destroy_plan(plan);
}

struct SpectrumKey {
  std::vector<int> dims;
  double spacing;
  double length_scale;
  bool operator<(const SpectrumKey& o) const {
    if (dims != o.dims) return dims < o.dims;
    if (spacing != o.spacing) return spacing < o.spacing;
    return length_scale < o.length_scale;
  }
};

// sqrt(eigenvalues) cache per embedding geometry.
const std::vector<double>& spectrum_sqrt(const std::vector<int>& torus_dims, double spacing,
                                         const CovarianceModel& cov) {
  static std::map<SpectrumKey, std::vector<double>> cache;
  static std::mutex mu;
  SpectrumKey key{torus_dims, spacing, cov.length_scale};
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<double> eig = embedding_eigenvalues(torus_dims, spacing, cov);
  check_embedding(eig);
  for (double& v : eig) v = std::sqrt(v);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(std::move(key), std::move(eig)).first->second;
}

}  // namespace

std::vector<int> embedding_torus_dims(const GridSpec& grid, const CovarianceModel& cov) {
  std::vector<int> torus;
  torus.reserve(grid.dims.size());
  const int margin = static_cast<int>(std::ceil(6.0 * cov.length_scale / grid.spacing));
  for (int d : grid.dims) torus.push_back(next_pow2(d + margin));
  return torus;
}

std::vector<double> embedding_eigenvalues(const std::vector<int>& torus_dims, double spacing,
                                          const CovarianceModel& cov) {
  FftArrays layout = layout_of(torus_dims);
  double* c = fftw_alloc_real(layout.real_count);
  fftw_complex* spec = fftw_alloc_complex(layout.complex_count);

  // Periodized covariance against the origin: summing the wrap images keeps
  // the circulant spectrum nonnegative (each eigenvalue samples the positive
  // spectral density), where the nearest-image shortcut can dip ~e^-18 below
  // zero at a 6l margin.
  const std::size_t rank = torus_dims.size();
  std::vector<int> idx(rank, 0);
  std::vector<int> wrap(rank, -1);
  for (std::size_t flat = 0; flat < layout.real_count; ++flat) {
    double sum = 0.0;
    std::fill(wrap.begin(), wrap.end(), -1);
    for (;;) {
      double r2 = 0.0;
      for (std::size_t a = 0; a < rank; ++a) {
        double d = (idx[a] + wrap[a] * torus_dims[a]) * spacing;
        r2 += d * d;
      }
      sum += cov(std::sqrt(r2));
      std::size_t a = 0;
      for (; a < rank; ++a) {
        if (++wrap[a] <= 1) break;
        wrap[a] = -1;
      }
      if (a == rank) break;
    }
    c[flat] = sum;
    for (std::size_t a = rank; a-- > 0;) {
      if (++idx[a] < torus_dims[a]) break;
      idx[a] = 0;
    }
  }

  fft_r2c(torus_dims, c, spec);
  std::vector<double> eig(layout.complex_count);
  for (std::size_t i = 0; i < eig.size(); ++i) eig[i] = spec[i][0];
  fftw_free(c);
  fftw_free(spec);
  return eig;
}

void check_embedding(std::vector<double>& eigenvalues) {
  double max_eig = 0.0;
  for (double v : eigenvalues) max_eig = std::max(max_eig, v);
  const double tol = 1e-10 * max_eig;
  for (double& v : eigenvalues) {
    if (v < -tol)
      throw numeric_error(
          "circulant embedding is not nonnegative definite; enlarge the torus margin");
    if (v < 0.0) v = 0.0;
  }
}

std::vector<GridFunction> simulate(const FieldSpec& spec, std::uint64_t sample_index) {
  if (spec.components < 1) throw std::invalid_argument("simulate: components must be >= 1");
  if (!(spec.cov.length_scale > 0.0))
    throw std::invalid_argument("simulate: length scale must be positive");
  const std::vector<int> torus = embedding_torus_dims(spec.grid, spec.cov);
  const FftArrays layout = layout_of(torus);
  const std::vector<double>& amp = spectrum_sqrt(torus, spec.grid.spacing, spec.cov);
  const double inv_n = 1.0 / static_cast<double>(layout.real_count);

  std::vector<GridFunction> fields;
  fields.reserve(static_cast<std::size_t>(spec.components));
  double* work = fftw_alloc_real(layout.real_count);
  fftw_complex* freq = fftw_alloc_complex(layout.complex_count);
  for (int comp = 0; comp < spec.components; ++comp) {
    NormalStream noise(stream_seed(spec.seed, sample_index, static_cast<std::uint64_t>(comp)));
    for (std::size_t i = 0; i < layout.real_count; ++i) work[i] = noise.next();
    fft_r2c(torus, work, freq);
    for (std::size_t i = 0; i < layout.complex_count; ++i) {
      freq[i][0] *= amp[i];
      freq[i][1] *= amp[i];
    }
    fft_c2r(torus, freq, work);

    // Crop the leading window; scale away the unnormalized transform pair.
    std::vector<double> values(spec.grid.vertex_count());
    std::vector<int> idx(spec.grid.dims.size(), 0);
    std::vector<std::size_t> tstr(torus.size(), 1);
    for (std::size_t a = torus.size() - 1; a-- > 0;)
      tstr[a] = tstr[a + 1] * static_cast<std::size_t>(torus[a + 1]);
    for (std::size_t flat = 0; flat < values.size(); ++flat) {
      std::size_t src = 0;
      for (std::size_t a = 0; a < idx.size(); ++a)
        src += tstr[a] * static_cast<std::size_t>(idx[a]);
      values[flat] = work[src] * inv_n;
      for (std::size_t a = idx.size(); a-- > 0;) {
        if (++idx[a] < spec.grid.dims[a]) break;
        idx[a] = 0;
      }
    }
    fields.emplace_back(spec.grid, std::move(values));
  }
  fftw_free(work);
  fftw_free(freq);
  return fields;
}

}  // namespace hadrf
