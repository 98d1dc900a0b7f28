#include "hadrf/pgm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <stdexcept>

namespace hadrf {

namespace {

// Next whitespace-separated token, skipping '#' comments.
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) return tok;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  if (tok.empty()) throw std::invalid_argument("pgm: truncated header");
  return tok;
}

long parse_int(const std::string& tok) {
  std::size_t pos = 0;
  long v = std::stol(tok, &pos);
  if (pos != tok.size()) throw std::invalid_argument("pgm: malformed integer '" + tok + "'");
  return v;
}

}  // namespace

PixelMask read_pgm(std::istream& in) {
  std::string magic = next_token(in);
  if (magic != "P2" && magic != "P5")
    throw std::invalid_argument("pgm: expected P2 or P5, got '" + magic + "'");
  long width = parse_int(next_token(in));
  long height = parse_int(next_token(in));
  long maxval = parse_int(next_token(in));
  if (width <= 0 || height <= 0) throw std::invalid_argument("pgm: nonpositive dimensions");
  if (maxval <= 0 || maxval > 65535) throw std::invalid_argument("pgm: bad maxval");

  PixelMask mask;
  mask.rows = static_cast<int>(height);
  mask.cols = static_cast<int>(width);
  mask.pixels.resize(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));

  if (magic == "P2") {
    for (auto& p : mask.pixels) {
      long v = parse_int(next_token(in));
      if (v < 0 || v > maxval) throw std::invalid_argument("pgm: sample out of range");
      p = v != 0 ? 1 : 0;
    }
  } else {
    // Binary data begins after exactly one whitespace byte (consumed by the
    // maxval token's terminator).
    const int bytes = maxval > 255 ? 2 : 1;
    for (auto& p : mask.pixels) {
      long v = 0;
      for (int b = 0; b < bytes; ++b) {
        int c = in.get();
        if (c == EOF) throw std::invalid_argument("pgm: truncated pixel data");
        v = (v << 8) | c;
      }
      p = v != 0 ? 1 : 0;
    }
  }
  return mask;
}

PixelMask read_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open image: " + path);
  return read_pgm(in);
}

}  // namespace hadrf
