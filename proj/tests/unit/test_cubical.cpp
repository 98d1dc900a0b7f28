#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>
#include <vector>

#include "hadrf/cubical.hpp"
#include "hadrf/special.hpp"

using namespace hadrf;

namespace {

CubicalSet random_cells(const GridSpec& grid, std::mt19937_64& rng, double fill = 0.4) {
  CubicalSet set(grid, CellClosure::general);
  std::bernoulli_distribution coin(fill);
  for (int t = 0; t < set.type_count(); ++t) {
    auto flags = set.mutable_cells(t);
    for (auto& f : flags) f = coin(rng) ? 1 : 0;
  }
  return set;
}

std::vector<std::uint8_t> random_mask(int rows, int cols, std::mt19937_64& rng) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(rows) * cols);
  std::bernoulli_distribution coin(0.5);
  for (auto& p : mask) p = coin(rng) ? 1 : 0;
  return mask;
}

}  // namespace

TEST_CASE("cell weights") {
  CHECK(cell_weight(0, 0, 1.0) == 1.0);
  CHECK(cell_weight(1, 1, 0.5) == 0.5);
  CHECK(cell_weight(2, 1, 1.0) == -2.0);
  CHECK(cell_weight(1, 2, 1.0) == 0.0);  // lower-dimensional cells carry nothing upward

  // Inclusion-exclusion oracle: the closed unit square decomposes into 4
  // vertices, 4 open edges and one open face; the mu_1 weights must sum to 2.
  double mu1 = 4 * cell_weight(0, 1, 1.0) + 4 * cell_weight(1, 1, 1.0) + cell_weight(2, 1, 1.0);
  CHECK(mu1 == 2.0);
}

TEST_CASE("intrinsic volumes of simple pixel complexes") {
  GridSpec g2({2, 2}, 1.0);
  auto pixel = CubicalSet::from_pixel_mask(g2, std::vector<std::uint8_t>{1});
  auto iv = intrinsic_volumes(pixel);
  CHECK(iv[0] == 1.0);
  CHECK(iv[1] == 2.0);
  CHECK(iv[2] == 1.0);

  GridSpec g23({2, 3}, 1.0);
  auto block = CubicalSet::from_pixel_mask(g23, std::vector<std::uint8_t>{1, 1});
  auto iv2 = intrinsic_volumes(block);
  CHECK(iv2[0] == 1.0);
  CHECK(iv2[1] == 3.0);
  CHECK(iv2[2] == 2.0);

  // Two pixels sharing only a corner: N0=7, N1=8, N2=2.
  GridSpec g33({3, 3}, 1.0);
  auto corner = CubicalSet::from_pixel_mask(g33, std::vector<std::uint8_t>{1, 0, 0, 1});
  auto iv3 = intrinsic_volumes(corner);
  CHECK(iv3[0] == 1.0);
  CHECK(iv3[1] == 4.0);
  CHECK(iv3[2] == 2.0);
}

TEST_CASE("half-open unit square as a general cell set") {
  GridSpec g({2, 2}, 1.0);
  CubicalSet half(g, CellClosure::general);
  half.set_cell(0, 0, true);  // corner vertex
  half.set_cell(1, 0, true);  // open edge along axis 0
  half.set_cell(2, 0, true);  // open edge along axis 1
  half.set_cell(3, 0, true);  // open square
  auto iv = intrinsic_volumes(half);
  CHECK(iv[0] == 0.0);
  CHECK(iv[1] == 0.0);
  CHECK(iv[2] == 1.0);
}

TEST_CASE("empty set and full complex") {
  GridSpec g({4, 4}, 0.5);
  CubicalSet empty(g, CellClosure::general);
  auto iv = intrinsic_volumes(empty);
  CHECK(iv[0] == 0.0);
  CHECK(iv[1] == 0.0);
  CHECK(iv[2] == 0.0);

  auto full = intrinsic_volumes(CubicalSet::full(g));
  auto box = box_intrinsic_volumes(g.side_lengths());
  for (int k = 0; k <= 2; ++k) CHECK(full[k] == box[k]);
}

TEST_CASE("box intrinsic volumes") {
  auto a = box_intrinsic_volumes(std::vector<double>{1.0, 1.0});
  CHECK(a[0] == 1.0);
  CHECK(a[1] == 2.0);
  CHECK(a[2] == 1.0);

  auto b = box_intrinsic_volumes(std::vector<double>{2.0, 3.0});
  CHECK(b[1] == 5.0);
  CHECK(b[2] == 6.0);

  auto c = box_intrinsic_volumes(std::vector<double>{1.0, 1.0, 1.0});
  CHECK(c[0] == 1.0);
  CHECK(c[1] == 3.0);
  CHECK(c[2] == 3.0);
  CHECK(c[3] == 1.0);

  // Voxelized unit cube agrees exactly.
  GridSpec g({2, 2, 2}, 1.0);
  auto cube = intrinsic_volumes(CubicalSet::full(g));
  for (int k = 0; k <= 3; ++k) CHECK(cube[k] == c[k]);
}

TEST_CASE("voxelized boxes match the closed form exactly") {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> side2(1, 12), side3(1, 5);
  for (int rep = 0; rep < 25; ++rep) {
    for (double h : {1.0, 0.5}) {
      GridSpec g({side2(rng) + 1, side2(rng) + 1}, h);
      auto vox = intrinsic_volumes(CubicalSet::full(g));
      auto box = box_intrinsic_volumes(g.side_lengths());
      for (int k = 0; k <= 2; ++k) CHECK(vox[k] == box[k]);

      GridSpec g3({side3(rng) + 1, side3(rng) + 1, side3(rng) + 1}, h);
      auto vox3 = intrinsic_volumes(CubicalSet::full(g3));
      auto box3 = box_intrinsic_volumes(g3.side_lengths());
      for (int k = 0; k <= 3; ++k) CHECK(vox3[k] == box3[k]);
    }
  }
}

TEST_CASE("excursion complexes") {
  GridSpec g({3, 4}, 0.5);
  auto f = GridFunction::constant(g, 5.0);
  auto full = excursion_complex(f, 3.0, LevelConvention::closed);
  auto iv = intrinsic_volumes(full);
  auto box = box_intrinsic_volumes(g.side_lengths());
  for (int k = 0; k <= 2; ++k) CHECK(iv[k] == box[k]);

  auto none = excursion_complex(f, 6.0, LevelConvention::closed);
  CHECK(intrinsic_volumes(none)[0] == 0.0);

  // Strict convention drops the tie at f == s.
  auto open_none = excursion_complex(f, 5.0, LevelConvention::open);
  CHECK(intrinsic_volumes(open_none)[0] == 0.0);
  auto closed_all = excursion_complex(f, 5.0, LevelConvention::closed);
  CHECK(intrinsic_volumes(closed_all)[2] == box[2]);

  GridSpec g22({2, 2}, 1.0);
  GridFunction peak(g22, {7.0, 0.0, 0.0, 0.0});
  auto vertex_only = excursion_complex(peak, 5.0, LevelConvention::closed);
  auto ivv = intrinsic_volumes(vertex_only);
  CHECK(ivv[0] == 1.0);
  CHECK(ivv[1] == 0.0);
}

TEST_CASE("additivity holds exactly on arbitrary cell sets") {
  std::mt19937_64 rng(202);
  GridSpec g({5, 6}, 0.25);
  for (int rep = 0; rep < 30; ++rep) {
    auto a = random_cells(g, rng);
    auto b = random_cells(g, rng);
    auto lhs_a = intrinsic_volumes(a);
    auto lhs_b = intrinsic_volumes(b);
    auto rhs_u = intrinsic_volumes(set_union(a, b));
    auto rhs_i = intrinsic_volumes(set_intersection(a, b));
    for (int k = 0; k <= 2; ++k) CHECK(lhs_a[k] + lhs_b[k] == rhs_u[k] + rhs_i[k]);
  }
}

TEST_CASE("isometry invariance on pixel masks") {
  std::mt19937_64 rng(303);
  const int n = 6;
  for (int rep = 0; rep < 10; ++rep) {
    auto mask = random_mask(n, n, rng);
    GridSpec g({n + 1, n + 1}, 1.0);
    auto base = intrinsic_volumes(CubicalSet::from_pixel_mask(g, mask));

    std::vector<std::uint8_t> rot(mask.size()), flip(mask.size());
    std::vector<std::uint8_t> shifted(static_cast<std::size_t>(n + 3) * (n + 3), 0);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        std::uint8_t v = mask[static_cast<std::size_t>(r) * n + c];
        rot[static_cast<std::size_t>(c) * n + (n - 1 - r)] = v;
        flip[static_cast<std::size_t>(r) * n + (n - 1 - c)] = v;
        shifted[static_cast<std::size_t>(r + 2) * (n + 3) + (c + 1)] = v;
      }
    auto iv_rot = intrinsic_volumes(CubicalSet::from_pixel_mask(g, rot));
    auto iv_flip = intrinsic_volumes(CubicalSet::from_pixel_mask(g, flip));
    GridSpec g_big({n + 4, n + 4}, 1.0);
    auto iv_shift = intrinsic_volumes(CubicalSet::from_pixel_mask(g_big, shifted));
    for (int k = 0; k <= 2; ++k) {
      CHECK(base[k] == iv_rot[k]);
      CHECK(base[k] == iv_flip[k]);
      CHECK(base[k] == iv_shift[k]);
    }
  }
}

TEST_CASE("homogeneity in the spacing") {
  std::mt19937_64 rng(404);
  const int n = 5;
  auto mask = random_mask(n, n, rng);
  for (double lambda : {2.0, 4.0, 0.5}) {
    GridSpec g1({n + 1, n + 1}, 1.0);
    GridSpec gl({n + 1, n + 1}, lambda);
    auto base = intrinsic_volumes(CubicalSet::from_pixel_mask(g1, mask));
    auto scaled = intrinsic_volumes(CubicalSet::from_pixel_mask(gl, mask));
    double factor = 1.0;
    for (int k = 0; k <= 2; ++k) {
      CHECK(scaled[k] == factor * base[k]);
      factor *= lambda;
    }
  }
}

TEST_CASE("tube volume series for boxes") {
  // Volume of the rho-neighborhood of a closed box (a, b):
  //   a b + 2 (a + b) rho + pi rho^2 = sum_i omega_{2-i} rho^{2-i} mu_i.
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1, 1}, {2, 3}, {0.7, 4.2}}) {
    auto mu = box_intrinsic_volumes(std::vector<double>{a, b});
    for (double rho : {0.1, 0.5, 2.0}) {
      double analytic = a * b + 2.0 * (a + b) * rho + M_PI * rho * rho;
      double series = 0.0;
      for (int i = 0; i <= 2; ++i) series += ball_volume(2 - i) * std::pow(rho, 2 - i) * mu[i];
      CHECK(series == doctest::Approx(analytic).epsilon(1e-12));
    }
  }
}

TEST_CASE("euler characteristic is integral") {
  std::mt19937_64 rng(505);
  GridSpec g({6, 5}, 0.5);
  for (int rep = 0; rep < 20; ++rep) {
    auto set = random_cells(g, rng);
    double chi = intrinsic_volumes(set)[0];
    CHECK(std::fabs(chi - std::round(chi)) < 1e-9);
  }
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(GridSpec({1, 4}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({3, 3}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GridSpec({3, 3, 3, 3}, 1.0), std::invalid_argument);

  // A complex marked closed must actually contain its faces.
  GridSpec g({2, 2}, 1.0);
  CubicalSet bad(g, CellClosure::closed_complex);
  bad.set_cell(3, 0, true);  // lone open square
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad.close();
  CHECK_NOTHROW(bad.validate());
  CHECK(intrinsic_volumes(bad)[0] == 1.0);
}
