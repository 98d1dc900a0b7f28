#include "hadrf/piecewise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hadrf {

Polynomial::Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double x) const {
  double acc = 0.0;
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<double>(i);
  return Polynomial(std::move(d));
}

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  if (is_zero() || rhs.is_zero()) return {};
  std::vector<double> out(coeffs_.size() + rhs.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * rhs.coeffs_[j];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  std::vector<double> out(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] += coeffs_[i];
  for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) out[i] += rhs.coeffs_[i];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double scale) const {
  std::vector<double> out(coeffs_);
  for (double& c : out) c *= scale;
  return Polynomial(std::move(out));
}

Polynomial Polynomial::compose(const Polynomial& inner) const {
  // Horner in the polynomial ring.
  Polynomial acc;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    acc = acc * inner + Polynomial{coeffs_[i]};
  }
  return acc;
}

Piecewise1D::Piecewise1D() : pieces_{Polynomial{}} {}

Piecewise1D::Piecewise1D(Polynomial single) : pieces_{std::move(single)} {}

Piecewise1D::Piecewise1D(std::vector<double> breakpoints, std::vector<Polynomial> pieces)
    : breaks_(std::move(breakpoints)), pieces_(std::move(pieces)) {
  if (pieces_.size() != breaks_.size() + 1)
    throw std::invalid_argument("piecewise: need one more piece than breakpoints");
  if (!std::is_sorted(breaks_.begin(), breaks_.end()))
    throw std::invalid_argument("piecewise: breakpoints must be ascending");
  for (std::size_t i = 1; i < breaks_.size(); ++i)
    if (breaks_[i] == breaks_[i - 1]) throw std::invalid_argument("piecewise: duplicate breakpoint");
  for (double b : breaks_)
    if (!std::isfinite(b)) throw std::invalid_argument("piecewise: breakpoints must be finite");
}

Piecewise1D Piecewise1D::identity() { return Piecewise1D(Polynomial{0.0, 1.0}); }

double Piecewise1D::operator()(double x) const {
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
  return pieces_[static_cast<std::size_t>(it - breaks_.begin())](x);
}

Piecewise1D Piecewise1D::derivative() const {
  std::vector<Polynomial> d;
  d.reserve(pieces_.size());
  for (const auto& p : pieces_) d.push_back(p.derivative());
  return breaks_.empty() ? Piecewise1D(std::move(d[0])) : Piecewise1D(breaks_, std::move(d));
}

bool Piecewise1D::is_zero() const {
  return std::all_of(pieces_.begin(), pieces_.end(), [](const Polynomial& p) { return p.is_zero(); });
}

std::optional<Piecewise1D> compose(const Piecewise1D& outer, const Piecewise1D& inner) {
  if (inner.is_single_polynomial() && inner.piece(0).coeffs().size() == 2 &&
      inner.piece(0).coeffs()[0] == 0.0 && inner.piece(0).coeffs()[1] == 1.0) {
    return outer;  // inner is the identity
  }
  if (outer.is_single_polynomial()) {
    std::vector<Polynomial> pieces;
    pieces.reserve(inner.piece_count());
    for (std::size_t i = 0; i < inner.piece_count(); ++i)
      pieces.push_back(outer.piece(0).compose(inner.piece(i)));
    if (inner.is_single_polynomial()) return Piecewise1D(std::move(pieces[0]));
    return Piecewise1D(std::vector<double>(inner.breakpoints().begin(), inner.breakpoints().end()),
                       std::move(pieces));
  }
  return std::nullopt;
}

}  // namespace hadrf
