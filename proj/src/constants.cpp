#include "hlmax/constants.hpp"

#include "hlmax/lattice.hpp"
#include "polynomial.hpp"

#include <sstream>
#include <stdexcept>

namespace hlmax {

using detail::Polynomial;

std::string_view constant_kind_name(ConstantKind kind) {
  return kind == ConstantKind::CenteredL1 ? "centered" : "uncentered";
}

ConstantKind parse_constant_kind(std::string_view name) {
  if (name == "centered") return ConstantKind::CenteredL1;
  if (name == "uncentered") return ConstantKind::UncenteredCube;
  throw std::invalid_argument("unknown constant kind '" + std::string(name) + "'");
}

Rational centered_constant_1d() { return Rational(2); }

namespace {

void require_centered_dim(int d) {
  if (d < 2) throw std::invalid_argument("centered l1 constant is defined for d >= 2; use centered_constant_1d()");
}

Rational centered_term_from(int d, std::int64_t k, const ShellTable& low, const ShellTable& full) {
  if (k == 0) return Rational(2 * d);
  Rational t(BigInt(2 * d) * low.shell(k), full.count(k));
  t.canonicalize();
  return t;
}

Rational uncentered_term_raw(int d, std::int64_t k) {
  if (k == 0) return Rational(2 * d);
  const Rational kk(static_cast<long>(k));
  Rational b = (2 * kk - 1) / kk;
  Rational a = Rational(2) / (kk + 1) + b;
  Rational ap = 1, bp = 1;
  for (int i = 0; i < d - 1; ++i) {
    ap *= a;
    bp *= b;
  }
  Rational t = Rational(2 * d) / kk * (ap - bp);
  t.canonicalize();
  return t;
}

// term_k * k (k + 1) = num(k) / den(k) for k >= 1.
struct TermShape {
  Polynomial num;
  Polynomial den;
};

TermShape centered_shape(int d) {
  // N_{1,d}(k) and the shell count of dimension d-1 agree with polynomials
  // of degree d and d-2 for k >= 1; fit on k = 1..d+1 and confirm at d+2.
  const std::int64_t pts = d + 1;
  ShellTable full(d, pts + 1), low(d - 1, pts + 1);
  std::vector<Rational> xs, n_ys, s_ys;
  for (std::int64_t k = 1; k <= pts; ++k) {
    xs.emplace_back(static_cast<long>(k));
    n_ys.emplace_back(full.count(k));
    s_ys.emplace_back(low.shell(k));
  }
  Polynomial n_poly = Polynomial::interpolate(xs, n_ys);
  Polynomial s_poly = Polynomial::interpolate(xs, s_ys);
  const Rational check(static_cast<long>(pts + 1));
  if (n_poly(check) != Rational(full.count(pts + 1)) || s_poly(check) != Rational(low.shell(pts + 1))) {
    throw std::logic_error("lattice counts are not polynomial on the sample range");
  }
  const Polynomial k = Polynomial::linear(1, 0), k1 = Polynomial::linear(1, 1);
  return TermShape{s_poly * k * k1 * Rational(2 * d), n_poly};
}

TermShape uncentered_shape(int d) {
  // 2/(k+1) + (2k-1)/k = (2k^2 + 3k - 1) / (k (k+1)), and (2k-1)/k = (2k-1)(k+1) / (k (k+1)).
  const Polynomial k = Polynomial::linear(1, 0), k1 = Polynomial::linear(1, 1);
  const Polynomial a({Rational(-1), Rational(3), Rational(2)});
  const Polynomial b = Polynomial::linear(2, -1) * k1;
  const auto e = static_cast<unsigned>(d - 1);
  return TermShape{(a.pow(e) - b.pow(e)) * k1 * Rational(2 * d), (k * k1).pow(e)};
}

// Smallest c on a fixed increasing ladder whose majorant certifies from K+1.
// The ladder does not depend on K, so enclosures at larger K never use a
// larger c and stay nested.
bool certify(const TermShape& shape, std::int64_t K, Rational& c_out, std::string& why) {
  if (shape.num.is_zero()) {
    c_out = 0;
    why = "all terms beyond k = 0 vanish identically";
    return true;
  }
  if (shape.num.degree() > shape.den.degree()) return false;
  const Rational start(static_cast<long>(K + 1));
  const Polynomial den_shift = shape.den.taylor_shift(start);
  if (!den_shift.all_coefficients_nonnegative() || den_shift.is_zero()) return false;

  Rational lead = shape.num.degree() == shape.den.degree() ? Rational(shape.num.leading() / shape.den.leading())
                                                          : Rational(1);
  if (lead <= 0) lead = 1;
  std::vector<Rational> ladder{lead};
  for (int i = 30; i >= 1; --i) {
    Rational step(BigInt(1), BigInt(1) << i);
    ladder.push_back(lead * (1 + step));
  }
  for (int i = 1; i <= 20; ++i) ladder.push_back(lead * Rational(BigInt(1) << i));

  for (const auto& c : ladder) {
    const Polynomial gap = shape.den * c - shape.num;
    const Polynomial shifted = gap.taylor_shift(start);
    if (shifted.all_coefficients_nonnegative()) {
      c_out = c;
      std::ostringstream os;
      os << "term_k * k(k+1) = Num(k)/Den(k) with\n"
         << "  Num(k) = " << shape.num.to_string() << "\n"
         << "  Den(k) = " << shape.den.to_string() << "\n"
         << "c*Den - Num, re-expanded around k = " << (K + 1) << " (k = " << (K + 1)
         << " + x), has only nonnegative coefficients in x, as does Den; hence term_k <= c/(k(k+1)) "
         << "for every k > " << K << " and the tail is at most c/(K+1), with c = " << hlmax::to_string(c)
         << ".";
      why = os.str();
      return true;
    }
  }
  return false;
}

}  // namespace

Rational centered_constant_term(int d, std::int64_t k) {
  require_centered_dim(d);
  if (k < 0) throw std::invalid_argument("term index must be >= 0");
  ShellTable full(d, k), low(d - 1, k);
  return centered_term_from(d, k, low, full);
}

Rational uncentered_constant_term(int d, std::int64_t k) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (k < 0) throw std::invalid_argument("term index must be >= 0");
  return uncentered_term_raw(d, k);
}

Rational centered_constant_partial(int d, std::int64_t K) {
  require_centered_dim(d);
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  ShellTable full(d, K), low(d - 1, K);
  std::vector<Rational> terms(static_cast<std::size_t>(K + 1));
  for (std::int64_t k = 0; k <= K; ++k) terms[static_cast<std::size_t>(k)] = centered_term_from(d, k, low, full);
  return tree_sum(terms);
}

Rational uncentered_constant_partial(int d, std::int64_t K) {
  if (d < 1) throw std::invalid_argument("dimension must be >= 1");
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  if (d == 1) return Rational(2);
  std::vector<Rational> terms(static_cast<std::size_t>(K + 1));
  for (std::int64_t k = 0; k <= K; ++k) terms[static_cast<std::size_t>(k)] = uncentered_term_raw(d, k);
  return tree_sum(terms);
}

ConstantEnclosure constant_enclosure(int d, std::int64_t K, ConstantKind kind) {
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  ConstantEnclosure e;
  e.d = d;
  e.kind = kind;
  e.terms_used = K;
  TermShape shape;
  if (kind == ConstantKind::CenteredL1) {
    require_centered_dim(d);
    e.lower = centered_constant_partial(d, K);
    shape = centered_shape(d);
  } else {
    if (d < 1) throw std::invalid_argument("dimension must be >= 1");
    e.lower = uncentered_constant_partial(d, K);
    shape = uncentered_shape(d);
  }
  if (!certify(shape, K, e.majorant, e.certificate)) {
    throw std::invalid_argument("no tail majorant certifiable from k = " + std::to_string(K + 1) +
                                "; increase the number of terms");
  }
  e.tail = e.majorant / Rational(static_cast<long>(K + 1));
  e.tail.canonicalize();
  e.upper = e.lower + e.tail;
  e.upper.canonicalize();
  return e;
}

Rational sharp_constant_upper(const BallSpec& spec, std::int64_t K) {
  spec.validate();
  if (spec.dim == 1) return Rational(2);
  if (spec.geometry == Geometry::CenteredL1) return constant_enclosure(spec.dim, K, ConstantKind::CenteredL1).upper;
  return constant_enclosure(spec.dim, K, ConstantKind::UncenteredCube).upper;
}

}  // namespace hlmax
