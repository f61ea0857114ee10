#include "hlmax/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace hlmax::oracle {

namespace {

Rational sum_abs(const GridFunction& f, const std::vector<LatticePoint>& points) {
  Rational s = 0;
  for (const auto& p : points) s += hlmax::abs(f.at(p));
  return s;
}

bool better(const Rational& v, const BigInt& count, const Rational& best_v, const BigInt& best_count) {
  return v > best_v || (v == best_v && count < best_count);
}

}  // namespace

ArgmaxWitness brute_centered_1d(const GridFunction& f, std::int64_t n, std::int64_t r_cap) {
  if (f.dim() != 1) throw DimensionMismatch("brute_centered_1d: dimension must be 1");
  for (const auto& [p, v] : f.support()) {
    if (std::abs(p[0] - n) > r_cap) throw std::invalid_argument("brute_centered_1d: r_cap below support distance");
  }
  ArgmaxWitness best{Rational(0), L1Ball{LatticePoint{n}, 0}, BigInt(1)};
  bool have = false;
  for (std::int64_t r = 0; r <= r_cap; ++r) {
    std::vector<LatticePoint> window;
    for (std::int64_t k = n - r; k <= n + r; ++k) window.push_back(LatticePoint{k});
    BigInt count(static_cast<long>(window.size()));
    Rational avg = sum_abs(f, window) / Rational(count);
    avg.canonicalize();
    if (!have || avg > best.value) {
      best = ArgmaxWitness{avg, L1Ball{LatticePoint{n}, r}, count};
      have = true;
    }
  }
  return best;
}

ArgmaxWitness brute_centered_l1(const GridFunction& f, const LatticePoint& n, std::int64_t r_cap) {
  if (f.dim() != n.dim()) throw DimensionMismatch("brute_centered_l1: dimensions differ");
  const int d = n.dim();
  for (const auto& [p, v] : f.support()) {
    std::int64_t dist = 0;
    for (int i = 0; i < d; ++i) dist += std::abs(p[i] - n[i]);
    if (dist > r_cap) throw std::invalid_argument("brute_centered_l1: r_cap below support distance");
  }
  ArgmaxWitness best{Rational(0), L1Ball{n, 0}, BigInt(1)};
  bool have = false;
  for (std::int64_t r = 0; r <= r_cap; ++r) {
    Rational sum = 0;
    BigInt count = 0;
    std::vector<std::int64_t> m(static_cast<std::size_t>(d), -r);
    while (true) {
      std::int64_t norm = 0;
      for (auto c : m) norm += std::abs(c);
      if (norm <= r) {
        ++count;
        LatticePoint x = n;
        for (int i = 0; i < d; ++i) x[i] += m[static_cast<std::size_t>(i)];
        sum += hlmax::abs(f.at(x));
      }
      int i = d - 1;
      for (; i >= 0; --i) {
        if (++m[static_cast<std::size_t>(i)] <= r) break;
        m[static_cast<std::size_t>(i)] = -r;
      }
      if (i < 0) break;
    }
    Rational avg = sum / Rational(count);
    avg.canonicalize();
    if (!have || avg > best.value) {
      best = ArgmaxWitness{avg, L1Ball{n, r}, count};
      have = true;
    }
  }
  return best;
}

ArgmaxWitness brute_uncentered_cube(const GridFunction& f, const LatticePoint& n, std::int64_t span_cap) {
  if (f.dim() != n.dim()) throw DimensionMismatch("brute_uncentered_cube: dimensions differ");
  const int d = n.dim();
  for (int i = 0; i < d; ++i) {
    std::int64_t lo = n[i], hi = n[i];
    for (const auto& [p, v] : f.support()) {
      lo = std::min(lo, p[i]);
      hi = std::max(hi, p[i]);
    }
    if (hi - lo + 1 > span_cap) throw std::invalid_argument("brute_uncentered_cube: span_cap below hull extent");
  }

  ArgmaxWitness best{Rational(0), Box{n, n}, BigInt(1)};
  bool have = false;
  // count vectors, then lower corners, both in lexicographic order
  std::vector<std::int64_t> counts(static_cast<std::size_t>(d), 1);
  while (true) {
    auto [mn, mx] = std::minmax_element(counts.begin(), counts.end());
    if (*mx - *mn <= 1) {
      std::vector<std::int64_t> lower(static_cast<std::size_t>(d));
      for (int i = 0; i < d; ++i) lower[static_cast<std::size_t>(i)] = n[i] - counts[static_cast<std::size_t>(i)] + 1;
      while (true) {
        Box box{LatticePoint(lower), LatticePoint(lower)};
        for (int i = 0; i < d; ++i) box.upper[i] = lower[static_cast<std::size_t>(i)] + counts[static_cast<std::size_t>(i)] - 1;
        Rational sum = 0;
        bool meets = false;
        for (const auto& [p, v] : f.support()) {
          if (box.contains(p)) {
            sum += hlmax::abs(v);
            meets = true;
          }
        }
        if (meets) {
          BigInt count = 1;
          for (auto c : counts) count *= BigInt(static_cast<long>(c));
          Rational avg = sum / Rational(count);
          avg.canonicalize();
          if (!have || better(avg, count, best.value, best.count) ||
              (avg == best.value && count == best.count && box.lower < best.box().lower)) {
            best = ArgmaxWitness{avg, box, count};
            have = true;
          }
        }
        int i = d - 1;
        for (; i >= 0; --i) {
          auto& l = lower[static_cast<std::size_t>(i)];
          if (++l <= n[i]) break;
          l = n[i] - counts[static_cast<std::size_t>(i)] + 1;
        }
        if (i < 0) break;
      }
    }
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++counts[static_cast<std::size_t>(i)] <= span_cap) break;
      counts[static_cast<std::size_t>(i)] = 1;
    }
    if (i < 0) break;
  }
  return best;
}

Rational brute_variation(const BoxGrid<Rational>& g, bool zero_extend) {
  const int d = g.box.dim();
  Rational total = 0;
  for (std::size_t idx = 0; idx < g.values.size(); ++idx) {
    const LatticePoint x = g.point_at(idx);
    const Rational& v = g.values[idx];
    for (int i = 0; i < d; ++i) {
      if (x[i] < g.box.upper[i]) {
        LatticePoint y = x;
        y[i] += 1;
        total += hlmax::abs(Rational(g.at(y) - v));
      } else if (zero_extend) {
        total += hlmax::abs(v);
      }
      if (x[i] == g.box.lower[i] && zero_extend) total += hlmax::abs(v);
    }
  }
  total.canonicalize();
  return total;
}

}  // namespace hlmax::oracle
