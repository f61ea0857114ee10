#pragma once

// Exact arithmetic vocabulary shared by every module. Big integers and
// rationals are GMP's C++ classes; everything that must be decided exactly
// (strict inequalities, sharpness gaps) goes through these types.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

namespace hlmax {

using BigInt = mpz_class;

/// mpq_class whose numerator/denominator constructor canonicalizes; GMP's own
/// leaves 6/4 as is, and every other mpq operation assumes canonical input.
class Rational : public mpq_class {
 public:
  Rational() = default;

  template <class T>
    requires std::is_constructible_v<mpq_class, const T&>
  Rational(const T& v) : mpq_class(v) {}

  template <class N, class D>
  Rational(const N& num, const D& den) : mpq_class(BigInt(num), BigInt(den)) {
    if (sgn(get_den()) == 0) throw std::domain_error("Rational: zero denominator");
    canonicalize();
  }
};

/// Raised when a textual rational cannot be parsed.
class RationalParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Canonical form: "p" for integers, otherwise "p/q" with q > 0 and gcd 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Accepts "p/q", "p", and plain decimals such as "-0.125" or "1e-3".
/// Decimals are converted exactly (0.1 is 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

/// Fixed-point rendering with `digits` digits after the point, rounded
/// half away from zero. Purely integer arithmetic, so output is stable
/// across platforms.
std::string to_decimal(const Rational& q, int digits);

double to_double(const Rational& q);

/// Exact sum with a fixed, balanced association order. Balanced pairing
/// keeps intermediate denominators small compared to a left fold.
Rational tree_sum(std::span<const Rational> terms);

Rational abs(const Rational& q);

/// Least common multiple of the denominators (1 for an empty range).
BigInt common_denominator(std::span<const Rational> values);

/// Narrowing with a range check.
std::int64_t to_int64(const BigInt& z);
bool fits_int64(const BigInt& z);

}  // namespace hlmax
