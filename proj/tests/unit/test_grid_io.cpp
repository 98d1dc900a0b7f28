#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <sstream>

#include "hadrf/grid.hpp"
#include "hadrf/pgm.hpp"

using namespace hadrf;

TEST_CASE("grid text round trip") {
  GridSpec g({3, 4}, 0.25);
  std::vector<double> values(12);
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = 0.5 * static_cast<double>(i) - 2.0;
  GridFunction f(g, values);

  std::stringstream buf;
  write_grid_function(buf, f);
  auto back = read_grid_function(buf);
  CHECK(back.grid() == g);
  for (std::size_t i = 0; i < values.size(); ++i) CHECK(back.value(i) == values[i]);

  GridSpec g3({2, 3, 2}, 1.5);
  GridFunction f3 = GridFunction::constant(g3, 7.25);
  std::stringstream buf3;
  write_grid_function(buf3, f3);
  auto back3 = read_grid_function(buf3);
  CHECK(back3.grid() == g3);
  CHECK(back3.value(11) == 7.25);
}

TEST_CASE("grid text rejects malformed input") {
  std::stringstream missing("3 3 1.0\n1 2 3 4 5");
  CHECK_THROWS_AS(read_grid_function(missing), std::invalid_argument);
  std::stringstream bad_header("3 1.5 1.0 2.0 9\n");
  CHECK_THROWS_AS(read_grid_function(bad_header), std::invalid_argument);
  std::stringstream tiny("1 2 1.0\n1 2\n");
  CHECK_THROWS_AS(read_grid_function(tiny), std::invalid_argument);
}

TEST_CASE("grid functions must be finite") {
  GridSpec g({2, 2}, 1.0);
  CHECK_THROWS_AS(GridFunction(g, {1.0, 2.0, std::nan(""), 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(GridFunction(g, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("pgm ascii and binary agree") {
  // 3 wide x 2 tall, one dark row.
  std::stringstream ascii("P2\n# comment line\n3 2\n255\n0 128 255\n0 0 0\n");
  auto a = read_pgm(ascii);
  CHECK(a.rows == 2);
  CHECK(a.cols == 3);
  CHECK(a.pixels == std::vector<std::uint8_t>{0, 1, 1, 0, 0, 0});

  std::string bin = "P5\n3 2\n255\n";
  bin += '\0';
  bin += static_cast<char>(128);
  bin += static_cast<char>(255);
  bin += '\0';
  bin += '\0';
  bin += '\0';
  std::stringstream binary(bin);
  auto b = read_pgm(binary);
  CHECK(b.pixels == a.pixels);

  // 16-bit samples: two bytes each, big endian.
  std::string wide = "P5\n1 2\n65535\n";
  wide += '\0';
  wide += '\1';  // 1 -> present
  wide += '\0';
  wide += '\0';  // 0 -> absent
  std::stringstream wstream(wide);
  auto w = read_pgm(wstream);
  CHECK(w.pixels == std::vector<std::uint8_t>{1, 0});
}

TEST_CASE("pgm rejects malformed input") {
  std::stringstream bad_magic("P3\n2 2\n255\n0 0 0 0\n");
  CHECK_THROWS_AS(read_pgm(bad_magic), std::invalid_argument);
  std::stringstream truncated("P5\n2 2\n255\nab");
  CHECK_THROWS_AS(read_pgm(truncated), std::invalid_argument);
  std::stringstream out_of_range("P2\n1 1\n10\n11\n");
  CHECK_THROWS_AS(read_pgm(out_of_range), std::invalid_argument);
}
