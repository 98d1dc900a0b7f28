#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hadrf {

// Binary mask decoded from a PGM image: nonzero samples are present pixels.
struct PixelMask {
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> pixels;  // row-major
};

// Reads P2 (ascii) or P5 (binary) PGM; supports '#' comments and 16-bit
// samples.
PixelMask read_pgm(std::istream& in);
PixelMask read_pgm_file(const std::string& path);

}  // namespace hadrf
