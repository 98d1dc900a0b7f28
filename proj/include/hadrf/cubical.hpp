#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "hadrf/grid.hpp"

namespace hadrf {

// Vector of intrinsic volumes (mu_0, ..., mu_n); entry k carries units
// length^k.  mu_0 is the Euler characteristic, mu_n the Lebesgue volume.
struct IntrinsicVolumes {
  std::vector<double> values;

  IntrinsicVolumes() = default;
  explicit IntrinsicVolumes(int order) : values(static_cast<std::size_t>(order) + 1, 0.0) {}

  int order() const { return static_cast<int>(values.size()) - 1; }
  double operator[](int k) const { return values[static_cast<std::size_t>(k)]; }
  double& operator[](int k) { return values[static_cast<std::size_t>(k)]; }
};

// Additive weight of a relatively open m-cell of edge length h toward mu_k:
// (-1)^(m-k) C(m,k) h^k for m >= k, else 0.  Summing these over the cells of
// a complex evaluates the valuation exactly.
double cell_weight(int cell_dim, int k, double spacing);

// mu_k of a closed axis-aligned box = k-th elementary symmetric polynomial
// of the side lengths.
IntrinsicVolumes box_intrinsic_volumes(std::span<const double> side_lengths);

enum class CellClosure {
  closed_complex,  // every face of a present cell is present
  general,         // arbitrary cell sets (supports half-open boxes)
};

// Finite set of grid cells of all dimensions 0..n: vertices, edges, faces,
// cubes.  Cells of "type" t (a bitmask of the axes the cell extends along)
// are stored as dense flags in lexicographic position order.  Immutable in
// spirit: build it, then query.
class CubicalSet {
 public:
  CubicalSet(GridSpec grid, CellClosure closure);

  static CubicalSet full(const GridSpec& grid);
  // Pixel/voxel mask over the full-dimensional cells (lexicographic, last
  // axis fastest); present cells are closed downward.
  static CubicalSet from_pixel_mask(const GridSpec& grid, std::span<const std::uint8_t> mask);

  const GridSpec& grid() const { return grid_; }
  int dimension() const { return grid_.dimension(); }
  CellClosure closure() const { return closure_; }

  int type_count() const { return 1 << dimension(); }
  static int type_dim(int type) { return __builtin_popcount(static_cast<unsigned>(type)); }
  // Cells of this type per axis: dims[a] - 1 along extended axes, dims[a]
  // otherwise.
  std::vector<int> type_extents(int type) const;
  std::size_t type_cell_count(int type) const;

  std::span<const std::uint8_t> cells(int type) const { return flags_[static_cast<std::size_t>(type)]; }
  std::span<std::uint8_t> mutable_cells(int type) { return flags_[static_cast<std::size_t>(type)]; }
  bool cell(int type, std::size_t flat_index) const {
    return flags_[static_cast<std::size_t>(type)][flat_index] != 0;
  }
  void set_cell(int type, std::size_t flat_index, bool present) {
    flags_[static_cast<std::size_t>(type)][flat_index] = present ? 1 : 0;
  }

  // Number of present cells per cell dimension 0..n.
  std::vector<std::size_t> counts_by_dim() const;

  // Add every face of every present cell; marks the set closed.
  void close();
  bool faces_closed() const;
  // Throws if marked closed but not closure-consistent.
  void validate() const;

 private:
  GridSpec grid_;
  CellClosure closure_;
  std::vector<std::vector<std::uint8_t>> flags_;  // per type
};

CubicalSet set_union(const CubicalSet& a, const CubicalSet& b);
CubicalSet set_intersection(const CubicalSet& a, const CubicalSet& b);

// Exact valuation of the union of present (relatively open) cells.
IntrinsicVolumes intrinsic_volumes(const CubicalSet& set);

enum class LevelConvention {
  closed,  // cell present iff every vertex satisfies f >= s
  open,    // strict: f > s
};

// Superlevel-set complex of a grid function at threshold s.
CubicalSet excursion_complex(const GridFunction& f, double level, LevelConvention convention);

}  // namespace hadrf
