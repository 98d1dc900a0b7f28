#include "hadrf/transform.hpp"

#include <stdexcept>

#include "hadrf/quadrature.hpp"

namespace hadrf {

GridFunction apply_transform(const TransformSpec& transform, std::span<const GridFunction> fields) {
  if (fields.empty()) throw std::invalid_argument("apply_transform: no fields");
  const int k = static_cast<int>(fields.size());
  if (!transform.accepts_components(k))
    throw std::invalid_argument("apply_transform: component count does not match transform");
  for (const auto& f : fields)
    if (!(f.grid() == fields[0].grid()))
      throw std::invalid_argument("apply_transform: fields on different grids");

  const std::size_t nvert = fields[0].values().size();
  std::vector<double> out(nvert, 0.0);
  switch (transform.kind) {
    case TransformSpec::Kind::identity:
      for (std::size_t j = 0; j < nvert; ++j) out[j] = fields[0].value(j);
      break;
    case TransformSpec::Kind::chi2:
      for (const auto& f : fields)
        for (std::size_t j = 0; j < nvert; ++j) out[j] += f.value(j) * f.value(j);
      break;
    case TransformSpec::Kind::piecewise1d:
      for (std::size_t j = 0; j < nvert; ++j) out[j] = transform.pw(fields[0].value(j));
      break;
  }
  return GridFunction(fields[0].grid(), std::move(out));
}

double transform_mean(const TransformSpec& transform, int k) {
  if (!transform.accepts_components(k))
    throw std::invalid_argument("transform_mean: component count does not match transform");
  switch (transform.kind) {
    case TransformSpec::Kind::identity:
      return 0.0;
    case TransformSpec::Kind::chi2:
      return static_cast<double>(k);
    case TransformSpec::Kind::piecewise1d:
      return normal_expectation([&](double x) { return transform.pw(x); });
  }
  return 0.0;
}

}  // namespace hadrf
