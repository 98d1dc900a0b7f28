#pragma once

#include <stdexcept>
#include <string>

namespace hadrf {

// Numerical failure (non-convergent quadrature, indefinite spectral
// embedding, degenerate level set).  The CLI maps these to exit code 2,
// distinct from usage errors.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hadrf
