#include "hlmax/rational.hpp"

#include <cctype>
#include <limits>

namespace hlmax {

std::string to_string(const BigInt& z) { return z.get_str(); }

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) {
    return q.get_num().get_str();
  }
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw RationalParseError("not an integer: '" + std::string(whole) + "'");
  }
  BigInt z(std::string(s), 10);
  return negative ? BigInt(-z) : z;
}

BigInt pow10(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, e);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw RationalParseError("empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(text.substr(0, slash), text);
    std::string_view den_text = text.substr(slash + 1);
    if (!den_text.empty() && den_text.front() == '+') den_text.remove_prefix(1);
    if (!all_digits(den_text)) {
      throw RationalParseError("bad denominator in '" + std::string(text) + "'");
    }
    BigInt den(std::string(den_text), 10);
    if (den == 0) throw RationalParseError("zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }

  // Decimal with optional exponent.
  std::string_view mantissa = text;
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    mantissa = text.substr(0, e);
    BigInt ex = parse_integer(text.substr(e + 1), text);
    if (ex > 100000 || ex < -100000) {
      throw RationalParseError("exponent out of range in '" + std::string(text) + "'");
    }
    exponent = ex.get_si();
  }
  bool negative = false;
  if (!mantissa.empty() && (mantissa.front() == '-' || mantissa.front() == '+')) {
    negative = mantissa.front() == '-';
    mantissa.remove_prefix(1);
  }
  std::string digits;
  long frac_digits = 0;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = mantissa.substr(0, dot);
    std::string_view frac_part = mantissa.substr(dot + 1);
    if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)) ||
        (int_part.empty() && frac_part.empty())) {
      throw RationalParseError("not a number: '" + std::string(text) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    frac_digits = static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(mantissa)) throw RationalParseError("not a number: '" + std::string(text) + "'");
    digits = std::string(mantissa);
  }
  BigInt num(digits, 10);
  if (negative) num = -num;
  long scale = exponent - frac_digits;
  Rational q;
  if (scale >= 0) {
    q = Rational(num * pow10(static_cast<unsigned long>(scale)));
  } else {
    q = Rational(num, pow10(static_cast<unsigned long>(-scale)));
  }
  q.canonicalize();
  return q;
}

std::string to_decimal(const Rational& q, int digits) {
  if (digits < 0) digits = 0;
  BigInt scale = pow10(static_cast<unsigned long>(digits));
  BigInt num = q.get_num();
  const BigInt& den = q.get_den();
  bool negative = num < 0;
  if (negative) num = -num;
  // round(|q| * 10^digits), half away from zero
  BigInt scaled = num * scale * 2 + den;
  BigInt twice_den = den * 2;
  BigInt rounded;
  mpz_fdiv_q(rounded.get_mpz_t(), scaled.get_mpz_t(), twice_den.get_mpz_t());

  std::string s = rounded.get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) {
      s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
    }
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  if (negative && rounded != 0) s.insert(0, "-");
  return s;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational tree_sum(std::span<const Rational> terms) {
  if (terms.empty()) return Rational(0);
  if (terms.size() == 1) return terms.front();
  std::vector<Rational> level(terms.begin(), terms.end());
  while (level.size() > 1) {
    std::vector<Rational> next;
    next.reserve((level.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.emplace_back(level[i] + level[i + 1]);
    }
    if (level.size() % 2 == 1) next.push_back(std::move(level.back()));
    level = std::move(next);
  }
  return level.front();
}

Rational abs(const Rational& q) {
  Rational r = q;
  if (r < 0) r = -r;
  return r;
}

BigInt common_denominator(std::span<const Rational> values) {
  BigInt l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

bool fits_int64(const BigInt& z) {
  static const BigInt lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const BigInt hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return z >= lo && z <= hi;
}

std::int64_t to_int64(const BigInt& z) {
  if (!fits_int64(z)) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  if (z.fits_slong_p()) return static_cast<std::int64_t>(z.get_si());
  // long is 64-bit on every supported platform; fall back to text otherwise
  return std::stoll(z.get_str());
}

}  // namespace hlmax
