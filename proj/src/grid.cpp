#include "hadrf/grid.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hadrf {

GridSpec::GridSpec(std::vector<int> d, double h) : dims(std::move(d)), spacing(h) {
  if (dims.empty() || dims.size() > 3)
    throw std::invalid_argument("GridSpec: dimension must be 1, 2 or 3");
  for (int n : dims)
    if (n < 2) throw std::invalid_argument("GridSpec: every axis needs at least 2 vertices");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw std::invalid_argument("GridSpec: spacing must be positive");
}

std::size_t GridSpec::vertex_count() const {
  std::size_t n = 1;
  for (int d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

std::vector<double> GridSpec::side_lengths() const {
  std::vector<double> s;
  s.reserve(dims.size());
  for (int d : dims) s.push_back((d - 1) * spacing);
  return s;
}

GridFunction::GridFunction(GridSpec grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.vertex_count())
    throw std::invalid_argument("GridFunction: value count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("GridFunction: values must be finite");
}

GridFunction GridFunction::constant(GridSpec grid, double value) {
  std::size_t n = grid.vertex_count();
  return GridFunction(std::move(grid), std::vector<double>(n, value));
}

double GridFunction::min_value() const { return *std::min_element(values_.begin(), values_.end()); }

double GridFunction::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

GridFunction read_grid_function(std::istream& in) {
  std::string header;
  while (std::getline(in, header)) {
    if (header.find_first_not_of(" \t\r") != std::string::npos) break;
  }
  std::istringstream hs(header);
  std::vector<double> fields;
  double x;
  while (hs >> x) fields.push_back(x);
  if (fields.size() < 2 || fields.size() > 4)
    throw std::invalid_argument("grid text: header must be 'n0 n1 [n2] h'");
  std::vector<int> dims;
  for (std::size_t i = 0; i + 1 < fields.size(); ++i) {
    if (fields[i] != std::floor(fields[i]) || fields[i] < 2)
      throw std::invalid_argument("grid text: extents must be integers >= 2");
    dims.push_back(static_cast<int>(fields[i]));
  }
  GridSpec spec(dims, fields.back());
  std::vector<double> values;
  values.reserve(spec.vertex_count());
  double v;
  while (in >> v) values.push_back(v);
  if (values.size() != spec.vertex_count()) {
    std::ostringstream msg;
    msg << "grid text: expected " << spec.vertex_count() << " values, got " << values.size();
    throw std::invalid_argument(msg.str());
  }
  return GridFunction(std::move(spec), std::move(values));
}

GridFunction read_grid_function_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open grid file: " + path);
  return read_grid_function(in);
}

void write_grid_function(std::ostream& out, const GridFunction& f) {
  const GridSpec& g = f.grid();
  for (std::size_t a = 0; a < g.dims.size(); ++a) out << g.dims[a] << ' ';
  out.precision(17);
  out << g.spacing << '\n';
  const int cols = g.dims.back();
  int col = 0;
  for (double v : f.values()) {
    out << v;
    if (++col == cols) {
      out << '\n';
      col = 0;
    } else {
      out << ' ';
    }
  }
}

void write_grid_function_file(const std::string& path, const GridFunction& f) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write_grid_function(out, f);
}

}  // namespace hadrf
