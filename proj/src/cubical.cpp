#include "hadrf/cubical.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hadrf/special.hpp"

namespace hadrf {

namespace {

std::size_t extent_product(std::span<const int> extents) {
  std::size_t n = 1;
  for (int e : extents) n *= static_cast<std::size_t>(e);
  return n;
}

std::vector<std::size_t> strides_of(std::span<const int> extents) {
  std::vector<std::size_t> s(extents.size(), 1);
  for (std::size_t a = extents.size() - 1; a-- > 0;)
    s[a] = s[a + 1] * static_cast<std::size_t>(extents[a + 1]);
  return s;
}

// Visits flat indices in lexicographic order with the running multi-index.
template <class Fn>
void for_each_index(std::span<const int> extents, Fn&& fn) {
  std::vector<int> idx(extents.size(), 0);
  const std::size_t total = extent_product(extents);
  for (std::size_t flat = 0; flat < total; ++flat) {
    fn(flat, idx);
    for (std::size_t a = extents.size(); a-- > 0;) {
      if (++idx[a] < extents[static_cast<std::size_t>(a)]) break;
      idx[a] = 0;
    }
  }
}

}  // namespace

double cell_weight(int cell_dim, int k, double spacing) {
  if (cell_dim < 0 || k < 0) throw std::invalid_argument("cell_weight: negative dimension");
  if (!(spacing > 0.0)) throw std::invalid_argument("cell_weight: spacing must be positive");
  if (cell_dim < k) return 0.0;
  double sign = ((cell_dim - k) % 2 == 0) ? 1.0 : -1.0;
  return sign * binomial(cell_dim, k) * std::pow(spacing, k);
}

IntrinsicVolumes box_intrinsic_volumes(std::span<const double> side_lengths) {
  for (double s : side_lengths)
    if (s < 0.0) throw std::invalid_argument("box_intrinsic_volumes: sides must be nonnegative");
  IntrinsicVolumes iv(static_cast<int>(side_lengths.size()));
  // Elementary symmetric polynomials by incremental expansion.
  iv[0] = 1.0;
  int used = 0;
  for (double s : side_lengths) {
    ++used;
    for (int k = used; k >= 1; --k) iv[k] += s * iv[k - 1];
  }
  return iv;
}

CubicalSet::CubicalSet(GridSpec grid, CellClosure closure)
    : grid_(std::move(grid)), closure_(closure) {
  flags_.resize(static_cast<std::size_t>(type_count()));
  for (int t = 0; t < type_count(); ++t)
    flags_[static_cast<std::size_t>(t)].assign(type_cell_count(t), 0);
}

CubicalSet CubicalSet::full(const GridSpec& grid) {
  CubicalSet s(grid, CellClosure::closed_complex);
  for (int t = 0; t < s.type_count(); ++t)
    for (auto& f : s.flags_[static_cast<std::size_t>(t)]) f = 1;
  return s;
}

CubicalSet CubicalSet::from_pixel_mask(const GridSpec& grid, std::span<const std::uint8_t> mask) {
  CubicalSet s(grid, CellClosure::closed_complex);
  const int top = s.type_count() - 1;
  if (mask.size() != s.type_cell_count(top))
    throw std::invalid_argument("from_pixel_mask: mask size does not match grid");
  auto flags = s.mutable_cells(top);
  for (std::size_t i = 0; i < mask.size(); ++i) flags[i] = mask[i] ? 1 : 0;
  s.close();
  return s;
}

std::vector<int> CubicalSet::type_extents(int type) const {
  std::vector<int> e(grid_.dims);
  for (int a = 0; a < dimension(); ++a)
    if (type & (1 << a)) --e[static_cast<std::size_t>(a)];
  return e;
}

std::size_t CubicalSet::type_cell_count(int type) const {
  return extent_product(type_extents(type));
}

std::vector<std::size_t> CubicalSet::counts_by_dim() const {
  std::vector<std::size_t> counts(static_cast<std::size_t>(dimension()) + 1, 0);
  for (int t = 0; t < type_count(); ++t) {
    std::size_t c = 0;
    for (std::uint8_t f : flags_[static_cast<std::size_t>(t)]) c += f;
    counts[static_cast<std::size_t>(type_dim(t))] += c;
  }
  return counts;
}

void CubicalSet::close() {
  // Types in descending cell dimension, so faces added by higher cells get
  // their own faces added in turn.
  std::vector<int> types;
  for (int t = 0; t < type_count(); ++t) types.push_back(t);
  std::sort(types.begin(), types.end(),
            [](int a, int b) { return type_dim(a) > type_dim(b); });
  for (int t : types) {
    if (type_dim(t) == 0) continue;
    const auto extents = type_extents(t);
    auto& own = flags_[static_cast<std::size_t>(t)];
    for (int a = 0; a < dimension(); ++a) {
      if (!(t & (1 << a))) continue;
      const int ft = t & ~(1 << a);
      const auto fext = type_extents(ft);
      const auto fstr = strides_of(fext);
      auto& face = flags_[static_cast<std::size_t>(ft)];
      for_each_index(extents, [&](std::size_t flat, const std::vector<int>& idx) {
        if (!own[flat]) return;
        std::size_t lower = 0;
        for (std::size_t ax = 0; ax < fstr.size(); ++ax)
          lower += fstr[ax] * static_cast<std::size_t>(idx[ax]);
        face[lower] = 1;
        face[lower + fstr[static_cast<std::size_t>(a)]] = 1;
      });
    }
  }
  closure_ = CellClosure::closed_complex;
}

bool CubicalSet::faces_closed() const {
  for (int t = 0; t < type_count(); ++t) {
    if (type_dim(t) == 0) continue;
    const auto extents = type_extents(t);
    const auto& own = flags_[static_cast<std::size_t>(t)];
    for (int a = 0; a < dimension(); ++a) {
      if (!(t & (1 << a))) continue;
      const int ft = t & ~(1 << a);
      const auto fstr = strides_of(type_extents(ft));
      const auto& face = flags_[static_cast<std::size_t>(ft)];
      bool ok = true;
      for_each_index(extents, [&](std::size_t flat, const std::vector<int>& idx) {
        if (!own[flat]) return;
        std::size_t lower = 0;
        for (std::size_t ax = 0; ax < fstr.size(); ++ax)
          lower += fstr[ax] * static_cast<std::size_t>(idx[ax]);
        if (!face[lower] || !face[lower + fstr[static_cast<std::size_t>(a)]]) ok = false;
      });
      if (!ok) return false;
    }
  }
  return true;
}

void CubicalSet::validate() const {
  if (closure_ == CellClosure::closed_complex && !faces_closed())
    throw std::invalid_argument("CubicalSet: marked closed but a face is missing");
}

CubicalSet set_union(const CubicalSet& a, const CubicalSet& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("set_union: grids differ");
  CellClosure cl = (a.closure() == CellClosure::closed_complex &&
                    b.closure() == CellClosure::closed_complex)
                       ? CellClosure::closed_complex
                       : CellClosure::general;
  CubicalSet out(a.grid(), cl);
  for (int t = 0; t < out.type_count(); ++t) {
    auto dst = out.mutable_cells(t);
    auto fa = a.cells(t);
    auto fb = b.cells(t);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (fa[i] | fb[i]);
  }
  return out;
}

CubicalSet set_intersection(const CubicalSet& a, const CubicalSet& b) {
  if (!(a.grid() == b.grid())) throw std::invalid_argument("set_intersection: grids differ");
  CellClosure cl = (a.closure() == CellClosure::closed_complex &&
                    b.closure() == CellClosure::closed_complex)
                       ? CellClosure::closed_complex
                       : CellClosure::general;
  CubicalSet out(a.grid(), cl);
  for (int t = 0; t < out.type_count(); ++t) {
    auto dst = out.mutable_cells(t);
    auto fa = a.cells(t);
    auto fb = b.cells(t);
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] = (fa[i] & fb[i]);
  }
  return out;
}

IntrinsicVolumes intrinsic_volumes(const CubicalSet& set) {
  const int n = set.dimension();
  const double h = set.grid().spacing;
  const auto counts = set.counts_by_dim();
  IntrinsicVolumes iv(n);
  for (int k = 0; k <= n; ++k) {
    double acc = 0.0;
    for (int m = k; m <= n; ++m)
      acc += static_cast<double>(counts[static_cast<std::size_t>(m)]) * cell_weight(m, k, h);
    iv[k] = acc;
  }
  return iv;
}

CubicalSet excursion_complex(const GridFunction& f, double level, LevelConvention convention) {
  const GridSpec& g = f.grid();
  const int n = g.dimension();
  std::vector<std::uint8_t> pass(g.vertex_count());
  auto values = f.values();
  if (convention == LevelConvention::closed) {
    for (std::size_t i = 0; i < pass.size(); ++i) pass[i] = values[i] >= level ? 1 : 0;
  } else {
    for (std::size_t i = 0; i < pass.size(); ++i) pass[i] = values[i] > level ? 1 : 0;
  }

  CubicalSet out(g, CellClosure::closed_complex);
  const auto vstr = strides_of(g.dims);
  for (int t = 0; t < out.type_count(); ++t) {
    // Vertex offsets of the cell corners relative to the base vertex.
    std::vector<std::size_t> corners{0};
    for (int a = 0; a < n; ++a) {
      if (!(t & (1 << a))) continue;
      std::size_t sz = corners.size();
      for (std::size_t c = 0; c < sz; ++c)
        corners.push_back(corners[c] + vstr[static_cast<std::size_t>(a)]);
    }
    const auto extents = out.type_extents(t);
    auto flags = out.mutable_cells(t);
    for_each_index(extents, [&](std::size_t flat, const std::vector<int>& idx) {
      std::size_t base = 0;
      for (std::size_t a = 0; a < vstr.size(); ++a)
        base += vstr[a] * static_cast<std::size_t>(idx[a]);
      for (std::size_t off : corners) {
        if (!pass[base + off]) return;
      }
      flags[flat] = 1;
    });
  }
  return out;
}

}  // namespace hadrf
