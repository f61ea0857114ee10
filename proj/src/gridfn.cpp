#include "hlmax/gridfn.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>

namespace hlmax {

GridFunction::GridFunction(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("GridFunction: dimension must be >= 1");
}

GridFunction::GridFunction(int dim, std::vector<std::pair<LatticePoint, Rational>> entries) : GridFunction(dim) {
  for (auto& [p, v] : entries) {
    if (p.dim() != dim) {
      throw DimensionMismatch("GridFunction: point " + p.to_string() + " does not have dimension " +
                              std::to_string(dim));
    }
    v.canonicalize();
    auto [it, inserted] = values_.emplace(p, v);
    if (!inserted) throw std::invalid_argument("GridFunction: duplicate point " + p.to_string());
    if (v == 0) values_.erase(it);
  }
}

GridFunction GridFunction::delta(const LatticePoint& p, const Rational& value) {
  return GridFunction(p.dim(), {{p, value}});
}

Rational GridFunction::at(const LatticePoint& p) const {
  auto it = values_.find(p);
  return it == values_.end() ? Rational(0) : it->second;
}

GridFunction GridFunction::absolutize() const {
  GridFunction g(dim_);
  for (const auto& [p, v] : values_) g.values_.emplace(p, hlmax::abs(v));
  return g;
}

GridFunction GridFunction::scaled(const Rational& c) const {
  GridFunction g(dim_);
  if (c == 0) return g;
  for (const auto& [p, v] : values_) g.values_.emplace(p, Rational(v * c));
  return g;
}

GridFunction GridFunction::translated(const LatticePoint& shift) const {
  GridFunction g(dim_);
  for (const auto& [p, v] : values_) g.values_.emplace(p + shift, v);
  return g;
}

GridFunction GridFunction::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != dim_) throw DimensionMismatch("permutation has wrong length");
  std::vector<int> seen(perm.size(), 0);
  for (int a : perm) {
    if (a < 0 || a >= dim_ || seen[static_cast<std::size_t>(a)]++) throw std::invalid_argument("not a permutation");
  }
  GridFunction g(dim_);
  for (const auto& [p, v] : values_) {
    LatticePoint q = p;
    for (int i = 0; i < dim_; ++i) q[i] = p[perm[static_cast<std::size_t>(i)]];
    g.values_.emplace(q, v);
  }
  return g;
}

std::optional<Box> GridFunction::bounding_box() const {
  if (values_.empty()) return std::nullopt;
  Box b{values_.begin()->first, values_.begin()->first};
  for (const auto& [p, v] : values_) {
    for (int i = 0; i < dim_; ++i) {
      b.lower[i] = std::min(b.lower[i], p[i]);
      b.upper[i] = std::max(b.upper[i], p[i]);
    }
  }
  return b;
}

Rational l1_norm(const GridFunction& f) {
  std::vector<Rational> terms;
  terms.reserve(f.support_size());
  for (const auto& [p, v] : f.support()) terms.push_back(hlmax::abs(v));
  return tree_sum(terms);
}

namespace {

constexpr mpfr_prec_t kNormPrecision = 256;

struct Mpfr {
  mpfr_t x;
  Mpfr() { mpfr_init2(x, kNormPrecision); mpfr_set_zero(x, 1); }
  ~Mpfr() { mpfr_clear(x); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
};

// Exact integer p-th root of a nonnegative rational, if it exists.
std::optional<Rational> exact_root(const Rational& s, unsigned long p) {
  BigInt num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), s.get_num_mpz_t(), p) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), s.get_den_mpz_t(), p) == 0) return std::nullopt;
  Rational r(num_root, den_root);
  r.canonicalize();
  return r;
}

}  // namespace

NormValue lp_norm(const GridFunction& f, NormOrder order) {
  NormValue out;
  if (order.is_infinite) {
    Rational m = 0;
    for (const auto& [p, v] : f.support()) m = std::max(m, hlmax::abs(v));
    out.exact = m;
    out.approx = m.get_d();
    return out;
  }
  const double p = order.p;
  if (!(p >= 1.0) || std::isinf(p)) throw std::invalid_argument("lp_norm: p must lie in [1, inf]");
  if (p == 1.0) {
    out.exact = l1_norm(f);
    out.approx = out.exact->get_d();
    return out;
  }
  if (f.is_zero()) {
    out.exact = Rational(0);
    return out;
  }
  const bool integer_p = std::floor(p) == p && p < 1e6;
  if (integer_p) {
    const auto ip = static_cast<unsigned long>(p);
    std::vector<Rational> powers;
    for (const auto& [pt, v] : f.support()) {
      Rational a = hlmax::abs(v);
      BigInt n, d;
      mpz_pow_ui(n.get_mpz_t(), a.get_num_mpz_t(), ip);
      mpz_pow_ui(d.get_mpz_t(), a.get_den_mpz_t(), ip);
      powers.emplace_back(n, d);
    }
    Rational s = tree_sum(powers);
    out.exact = exact_root(s, ip);
    Mpfr num, den, r;
    mpfr_set_z(num.x, s.get_num_mpz_t(), MPFR_RNDN);
    mpfr_set_z(den.x, s.get_den_mpz_t(), MPFR_RNDN);
    mpfr_div(r.x, num.x, den.x, MPFR_RNDN);
    mpfr_rootn_ui(r.x, r.x, ip, MPFR_RNDN);
    out.approx = mpfr_get_d(r.x, MPFR_RNDN);
    return out;
  }
  Mpfr acc, term, num, den, pe;
  mpfr_set_d(pe.x, p, MPFR_RNDN);
  for (const auto& [pt, v] : f.support()) {
    Rational a = hlmax::abs(v);
    mpfr_set_z(num.x, a.get_num_mpz_t(), MPFR_RNDN);
    mpfr_set_z(den.x, a.get_den_mpz_t(), MPFR_RNDN);
    mpfr_div(term.x, num.x, den.x, MPFR_RNDN);
    mpfr_pow(term.x, term.x, pe.x, MPFR_RNDN);
    mpfr_add(acc.x, acc.x, term.x, MPFR_RNDN);
  }
  mpfr_ui_div(pe.x, 1, pe.x, MPFR_RNDN);
  mpfr_pow(acc.x, acc.x, pe.x, MPFR_RNDN);
  out.approx = mpfr_get_d(acc.x, MPFR_RNDN);
  return out;
}

Rational total_variation(const GridFunction& f) {
  std::vector<Rational> terms;
  for (int axis = 0; axis < f.dim(); ++axis) {
    // group support points by the line parallel to e_axis through them
    std::map<LatticePoint, std::vector<std::pair<std::int64_t, Rational>>> lines;
    for (const auto& [p, v] : f.support()) {
      LatticePoint key = p;
      key[axis] = 0;
      lines[key].emplace_back(p[axis], v);
    }
    for (auto& [key, pts] : lines) {
      std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      terms.push_back(hlmax::abs(pts.front().second));
      for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (pts[i + 1].first == pts[i].first + 1) {
          terms.push_back(hlmax::abs(Rational(pts[i + 1].second - pts[i].second)));
        } else {
          terms.push_back(hlmax::abs(pts[i].second));
          terms.push_back(hlmax::abs(pts[i + 1].second));
        }
      }
      terms.push_back(hlmax::abs(pts.back().second));
    }
  }
  return tree_sum(terms);
}

// ---------------------------------------------------------------------------
// Strings of local extrema

namespace {

struct Run {
  std::int64_t lo, hi;
  Rational value;
  bool is_virtual = false;  // the limit beyond a monotone tail
  bool lo_infinite = false, hi_infinite = false;
  bool lo_open = false, hi_open = false;  // touches an open truncation end
};

int sign(const Rational& q) { return sgn(q); }

}  // namespace

StringDecomposition string_decomposition(const LineSequence& seq) {
  StringDecomposition out;
  out.variation = 0;
  out.boundary_correction = 0;

  std::vector<Run> runs;
  for (std::size_t t = 0; t < seq.values.size(); ++t) {
    const auto pos = seq.first_index + static_cast<std::int64_t>(t);
    if (!runs.empty() && runs.back().value == seq.values[t]) {
      runs.back().hi = pos;
    } else {
      runs.push_back(Run{pos, pos, seq.values[t]});
    }
  }
  if (runs.empty()) {
    if (seq.left.monotone && seq.right.monotone && seq.left.limit != seq.right.limit) {
      throw std::invalid_argument("string_decomposition: empty window with distinct limits");
    }
    out.constant = true;
    return out;
  }

  if (seq.left.monotone) {
    if (seq.left.limit == runs.front().value) {
      runs.front().lo_infinite = true;
    } else {
      runs.insert(runs.begin(), Run{runs.front().lo - 1, runs.front().lo - 1, seq.left.limit, true});
    }
  } else {
    runs.front().lo_open = true;
  }
  if (seq.right.monotone) {
    if (seq.right.limit == runs.back().value) {
      runs.back().hi_infinite = true;
    } else {
      runs.push_back(Run{runs.back().hi + 1, runs.back().hi + 1, seq.right.limit, true});
    }
  } else {
    runs.back().hi_open = true;
  }

  if (runs.size() == 1) {
    out.constant = true;
    return out;
  }

  std::vector<Rational> diffs;
  for (std::size_t i = 0; i + 1 < runs.size(); ++i) diffs.push_back(hlmax::abs(Rational(runs[i + 1].value - runs[i].value)));
  out.variation = tree_sum(diffs);

  std::vector<Rational> correction;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const Run& r = runs[i];
    const bool has_prev = i > 0, has_next = i + 1 < runs.size();
    const int vs_prev = has_prev ? sign(Rational(r.value - runs[i - 1].value)) : 0;
    const int vs_next = has_next ? sign(Rational(r.value - runs[i + 1].value)) : 0;
    const bool is_end = !has_prev || !has_next;
    // as an end of the run sequence it enters the variation once, interior extrema twice
    const int end_sign = is_end ? (has_prev ? vs_prev : vs_next) : 0;

    if (r.is_virtual) {
      correction.emplace_back(end_sign * r.value);
      continue;
    }
    int kind = 0;  // +1 maximum, -1 minimum
    if (has_prev && has_next) {
      if (vs_prev > 0 && vs_next > 0) kind = 1;
      if (vs_prev < 0 && vs_next < 0) kind = -1;
    } else {
      kind = end_sign;
    }
    bool listed = kind != 0;
    // a tail resting at the limit is the limit, not a string of minima
    if (kind < 0 && (r.lo_infinite || r.hi_infinite)) listed = false;

    if (is_end) {
      correction.emplace_back(end_sign * r.value);
      if (listed) correction.emplace_back(-2 * kind * r.value);
    }
    if (!listed) continue;
    ValueString s{r.lo, r.hi, r.lo_infinite, r.hi_infinite, r.value, r.lo_open || r.hi_open};
    (kind > 0 ? out.maxima : out.minima).push_back(std::move(s));
  }
  out.boundary_correction = tree_sum(correction);
  return out;
}

LineSequence line_restriction(const BoxGrid<Rational>& g, int axis, const LatticePoint& base) {
  const Box& box = g.box;
  if (axis < 0 || axis >= box.dim()) throw std::out_of_range("line_restriction: axis out of range");
  if (base.dim() != box.dim()) throw DimensionMismatch("line_restriction: base point dimension");
  LineSequence seq;
  for (int i = 0; i < box.dim(); ++i) {
    if (i == axis) continue;
    if (base[i] < box.lower[i] || base[i] > box.upper[i]) return seq;
  }
  seq.first_index = box.lower[axis];
  LatticePoint p = base;
  for (std::int64_t t = box.lower[axis]; t <= box.upper[axis]; ++t) {
    p[axis] = t;
    seq.values.push_back(g.at(p));
  }
  return seq;
}

}  // namespace hlmax
