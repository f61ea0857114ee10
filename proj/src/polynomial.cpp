#include "polynomial.hpp"

#include <stdexcept>

namespace hlmax::detail {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::linear(const Rational& a, const Rational& b) { return Polynomial({b, a}); }

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  acc.canonicalize();
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + o * Rational(-1); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  if (is_zero() || o.is_zero()) return {};
  std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::operator*(const Rational& s) const {
  std::vector<Rational> c = coeffs_;
  for (auto& x : c) x *= s;
  return Polynomial(std::move(c));
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(1);
  Polynomial base = *this;
  while (e) {
    if (e & 1U) result = result * base;
    base = base * base;
    e >>= 1U;
  }
  return result;
}

Polynomial Polynomial::taylor_shift(const Rational& a) const {
  // Horner in polynomial form: p(x + a) = (...(c_n (x+a) + c_{n-1})(x+a) + ...)
  Polynomial acc;
  const Polynomial xa = linear(1, a);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * xa + constant(*it);
  return acc;
}

bool Polynomial::all_coefficients_nonnegative() const {
  for (const auto& c : coeffs_) {
    if (c < 0) return false;
  }
  return true;
}

std::string Polynomial::to_string(const std::string& var) const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (int i = degree(); i >= 0; --i) {
    const Rational& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const bool neg = c < 0;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    const Rational mag = hlmax::abs(c);
    if (i == 0 || mag != 1) out += hlmax::to_string(mag);
    if (i >= 1) out += (i == 0 || mag != 1) ? "*" + var : var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out;
}

Polynomial Polynomial::interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate: bad sample sets");
  // Newton divided differences, then expansion.
  const std::size_t n = xs.size();
  std::vector<Rational> dd = ys;
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      const Rational span = xs[i] - xs[i - level];
      if (span == 0) throw std::invalid_argument("interpolate: repeated abscissa");
      dd[i] = (dd[i] - dd[i - 1]) / span;
    }
  }
  Polynomial result = constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    result = result * linear(1, -xs[i]) + constant(dd[i]);
  }
  return result;
}

}  // namespace hlmax::detail
