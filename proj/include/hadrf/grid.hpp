#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace hadrf {

// Regular vertex grid in 1, 2 or 3 dimensions.  dims counts vertices per
// axis (>= 2 each, so every axis carries at least one full-dimensional
// cell); spacing is the common edge length.
struct GridSpec {
  std::vector<int> dims;
  double spacing = 1.0;

  GridSpec() = default;
  GridSpec(std::vector<int> dims, double spacing);

  int dimension() const { return static_cast<int>(dims.size()); }
  std::size_t vertex_count() const;
  // Physical side lengths (dims[a] - 1) * spacing.
  std::vector<double> side_lengths() const;

  bool operator==(const GridSpec&) const = default;
};

// Real values sampled at every grid vertex, stored lexicographically with
// the last axis fastest.
class GridFunction {
 public:
  GridFunction(GridSpec grid, std::vector<double> values);
  static GridFunction constant(GridSpec grid, double value);

  const GridSpec& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  double value(std::size_t flat_index) const { return values_[flat_index]; }
  double min_value() const;
  double max_value() const;

 private:
  GridSpec grid_;
  std::vector<double> values_;
};

// Text format: one header line "n0 n1 [n2] h", then vertex values in
// lexicographic order (last axis fastest), whitespace separated.
GridFunction read_grid_function(std::istream& in);
GridFunction read_grid_function_file(const std::string& path);
void write_grid_function(std::ostream& out, const GridFunction& f);
void write_grid_function_file(const std::string& path, const GridFunction& f);

}  // namespace hadrf
