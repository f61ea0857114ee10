#pragma once

// Dense univariate polynomials with exact rational coefficients, enough to
// certify tail majorants of the constant series.

#include "hlmax/rational.hpp"

#include <string>
#include <vector>

namespace hlmax::detail {

class Polynomial {
 public:
  Polynomial() = default;
  /// coeffs[i] multiplies x^i.
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  /// a x + b
  static Polynomial linear(const Rational& a, const Rational& b);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  Rational leading() const { return coeffs_.empty() ? Rational(0) : coeffs_.back(); }
  bool is_zero() const { return coeffs_.empty(); }

  Rational operator()(const Rational& x) const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial pow(unsigned e) const;
  bool operator==(const Polynomial&) const = default;

  /// q(x) = p(x + a).
  Polynomial taylor_shift(const Rational& a) const;
  bool all_coefficients_nonnegative() const;

  std::string to_string(const std::string& var = "k") const;

  /// The unique polynomial of degree < xs.size() through (xs[i], ys[i]).
  static Polynomial interpolate(const std::vector<Rational>& xs, const std::vector<Rational>& ys);

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

}  // namespace hlmax::detail
