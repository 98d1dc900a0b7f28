#include "hadrf/polygonize.hpp"

#include <cmath>
#include <stdexcept>

namespace hadrf {

double marching_squares_perimeter(const CubicalSet& set) {
  if (set.dimension() != 2)
    throw std::invalid_argument("polygonized_mu1: needs a 2D pixel complex");
  if (set.closure() != CellClosure::closed_complex)
    throw std::invalid_argument("polygonized_mu1: needs a closed pixel complex");

  const double h = set.grid().spacing;
  const int prow = set.grid().dims[0] - 1;  // pixels per column direction
  const int pcol = set.grid().dims[1] - 1;
  auto mask = set.cells(set.type_count() - 1);

  // One ring of background padding; dual cells sit between pixel centers.
  auto at = [&](int r, int c) -> int {
    if (r < 0 || r >= prow || c < 0 || c >= pcol) return 0;
    return mask[static_cast<std::size_t>(r) * static_cast<std::size_t>(pcol) +
                static_cast<std::size_t>(c)]
               ? 1
               : 0;
  };

  const double diag = 0.5 * std::sqrt(2.0);
  double length = 0.0;
  for (int r = -1; r < prow; ++r) {
    for (int c = -1; c < pcol; ++c) {
      int code = at(r, c) | (at(r, c + 1) << 1) | (at(r + 1, c) << 2) | (at(r + 1, c + 1) << 3);
      switch (code) {
        case 0:
        case 15:
          break;
        // single corner in or out: one diagonal through two edge midpoints
        case 1:
        case 2:
        case 4:
        case 8:
        case 7:
        case 11:
        case 13:
        case 14:
          length += diag;
          break;
        // two adjacent corners: straight segment across the dual cell
        case 3:
        case 12:
        case 5:
        case 10:
          length += 1.0;
          break;
        // opposite corners: two diagonals either way the ambiguity resolves
        case 6:
        case 9:
          length += 2.0 * diag;
          break;
      }
    }
  }
  return length * h;
}

double polygonized_mu1(const CubicalSet& set) {
  return 0.5 * kIsotropicPerimeterCalibration * marching_squares_perimeter(set);
}

}  // namespace hadrf
