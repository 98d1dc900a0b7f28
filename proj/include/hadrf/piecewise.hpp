#pragma once

#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace hadrf {

// Dense univariate polynomial, coefficients in ascending degree order.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs);
  explicit Polynomial(std::vector<double> coeffs);

  double operator()(double x) const;
  Polynomial derivative() const;
  Polynomial compose(const Polynomial& inner) const;  // this(inner(x))

  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const double> coeffs() const { return coeffs_; }

  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator*(double scale) const;

 private:
  void trim();
  std::vector<double> coeffs_;
};

// Piecewise polynomial on the real line.  piece(i) applies on
// [breakpoint(i-1), breakpoint(i)); the first piece extends to -inf and the
// last to +inf.  Pieces are C^2 inside; continuity across breakpoints is not
// enforced.
class Piecewise1D {
 public:
  Piecewise1D();  // zero function
  explicit Piecewise1D(Polynomial single);
  Piecewise1D(std::vector<double> breakpoints, std::vector<Polynomial> pieces);

  static Piecewise1D identity();

  double operator()(double x) const;
  Piecewise1D derivative() const;

  std::size_t piece_count() const { return pieces_.size(); }
  const Polynomial& piece(std::size_t i) const { return pieces_[i]; }
  std::span<const double> breakpoints() const { return breaks_; }
  bool is_single_polynomial() const { return breaks_.empty(); }
  bool is_zero() const;

 private:
  std::vector<double> breaks_;
  std::vector<Polynomial> pieces_;
};

// outer(inner(x)) when representable here: inner the identity, or outer a
// single polynomial (composed piecewise over inner's pieces).
std::optional<Piecewise1D> compose(const Piecewise1D& outer, const Piecewise1D& inner);

}  // namespace hadrf
