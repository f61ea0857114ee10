#pragma once

// Point kernels behind the maximal operators. They run on |f| scaled to
// integer weights (value = weight / scale), and are instantiated for
// std::int64_t (products compared in 128 bits) and for BigInt. The 64-bit
// instantiation is only used when every weight sum and every point count that
// can occur is below 2^62, which keeps all cross products below 2^124.

#include "hlmax/gridfn.hpp"
#include "hlmax/maxop.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

namespace hlmax::detail {

inline int cmp_frac(std::int64_t an, std::int64_t ad, std::int64_t bn, std::int64_t bd) {
  const __int128 l = static_cast<__int128>(an) * bd;
  const __int128 r = static_cast<__int128>(bn) * ad;
  return (l > r) - (l < r);
}

inline int cmp_frac(const BigInt& an, const BigInt& ad, const BigInt& bn, const BigInt& bd) {
  const int c = cmp(BigInt(an * bd), BigInt(bn * ad));
  return (c > 0) - (c < 0);
}

inline BigInt to_big(std::int64_t v) { return BigInt(static_cast<long>(v)); }
inline const BigInt& to_big(const BigInt& v) { return v; }

template <class Int>
Int from_big(const BigInt& v) {
  if constexpr (std::is_same_v<Int, BigInt>) {
    return v;
  } else {
    return to_int64(v);
  }
}

/// |f| as integer weights over a common denominator.
template <class Int>
struct ScaledSupport {
  int dim = 1;
  std::size_t size = 0;
  std::vector<std::int64_t> coords;  // size * dim, lexicographic point order
  std::vector<Int> weights;
  BigInt scale = 1;

  const std::int64_t* point(std::size_t i) const { return coords.data() + i * static_cast<std::size_t>(dim); }
};

template <class Int>
ScaledSupport<Int> make_scaled_support(const GridFunction& f) {
  ScaledSupport<Int> s;
  s.dim = f.dim();
  s.size = f.support_size();
  std::vector<Rational> values;
  values.reserve(s.size);
  for (const auto& [p, v] : f.support()) {
    s.coords.insert(s.coords.end(), p.coords().begin(), p.coords().end());
    values.push_back(hlmax::abs(v));
  }
  s.scale = common_denominator(values);
  s.weights.reserve(s.size);
  for (const auto& v : values) {
    BigInt w = v.get_num() * (s.scale / v.get_den());
    s.weights.push_back(from_big<Int>(w));
  }
  return s;
}

template <class Int>
struct Candidate {
  Int num{0};
  Int den{1};
};

// ---------------------------------------------------------------------------
// Centered balls (l1 in any dimension; the interval case is d = 1).

template <class Int>
struct CenteredResult {
  Int num{0};
  Int den{1};
  std::int64_t radius = 0;
};

template <class Int>
class CenteredKernel {
 public:
  CenteredKernel(const ScaledSupport<Int>& support, const std::vector<Int>& counts)
      : support_(support), counts_(counts) {
    order_.reserve(support.size);
  }

  CenteredResult<Int> operator()(const std::int64_t* n) {
    const auto& s = support_;
    order_.clear();
    for (std::size_t i = 0; i < s.size; ++i) {
      const std::int64_t* p = s.point(i);
      std::int64_t dist = 0;
      for (int k = 0; k < s.dim; ++k) dist += p[k] > n[k] ? p[k] - n[k] : n[k] - p[k];
      order_.emplace_back(dist, i);
    }
    std::sort(order_.begin(), order_.end());

    CenteredResult<Int> best;  // r = 0 with nothing captured: value 0
    Int acc{0};
    for (std::size_t j = 0; j < order_.size(); ++j) {
      acc += s.weights[order_[j].second];
      const std::int64_t r = order_[j].first;
      if (j + 1 < order_.size() && order_[j + 1].first == r) continue;
      const Int& count = counts_[static_cast<std::size_t>(r)];
      if (cmp_frac(acc, count, best.num, best.den) > 0) {
        best.num = acc;
        best.den = count;
        best.radius = r;
      }
    }
    return best;
  }

 private:
  const ScaledSupport<Int>& support_;
  const std::vector<Int>& counts_;
  std::vector<std::pair<std::int64_t, std::size_t>> order_;
};

// ---------------------------------------------------------------------------
// Uncentered intervals (d = 1).

template <class Int>
struct IntervalResult {
  Int num{0};
  Int den{1};
  std::int64_t a = 0, b = 0;
};

template <class Int>
class IntervalKernel {
 public:
  explicit IntervalKernel(const ScaledSupport<Int>& support) {
    std::vector<std::size_t> idx(support.size);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return support.coords[a] < support.coords[b]; });
    xs_.reserve(support.size);
    prefix_.assign(support.size + 1, Int{0});
    for (std::size_t k = 0; k < idx.size(); ++k) {
      xs_.push_back(support.coords[idx[k]]);
      prefix_[k + 1] = prefix_[k] + support.weights[idx[k]];
    }
  }

  IntervalResult<Int> operator()(std::int64_t n) const {
    const auto s = xs_.size();
    const auto i_le = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), n) - xs_.begin());
    const auto i_ge = static_cast<std::size_t>(std::lower_bound(xs_.begin(), xs_.end(), n) - xs_.begin());

    IntervalResult<Int> best;
    best.a = best.b = n;
    Int best_count{1};
    bool have = false;

    // left endpoint: n itself (first captured index i_ge) or a support point < n
    for (std::size_t li = 0; li <= i_ge; ++li) {
      const bool at_n = li == i_ge;
      if (!at_n && xs_[li] >= n) continue;
      const std::int64_t a = at_n ? n : xs_[li];
      const std::size_t first = at_n ? i_ge : li;
      // right endpoint: n itself (last captured index i_le - 1) or a support point > n
      for (std::size_t rj = i_le; rj <= s; ++rj) {
        const bool rn = rj == s;
        const std::int64_t b = rn ? n : xs_[rj];
        if (!rn && b <= n) continue;
        const std::size_t end = rn ? i_le : rj + 1;  // one past the last captured index
        Int sum = end > first ? Int(prefix_[end] - prefix_[first]) : Int{0};
        Int count = Int(b - a + 1);
        int c = have ? cmp_frac(sum, count, best.num, best_count) : 1;
        if (c > 0 || (c == 0 && (count < best_count || (count == best_count && a < best.a)))) {
          best.num = sum;
          best_count = count;
          best.a = a;
          best.b = b;
          have = true;
        }
      }
    }
    best.den = best_count;
    return best;
  }

 private:
  std::vector<std::int64_t> xs_;
  std::vector<Int> prefix_;
};

// ---------------------------------------------------------------------------
// Uncentered cubes.

template <class Int>
struct CubeResult {
  Int num{0};
  Int den{1};
  std::vector<std::int64_t> lower;
  std::vector<std::int64_t> counts;
};

template <class Int>
class CubeKernel {
 public:
  CubeKernel(const ScaledSupport<Int>& support, CubeStrategy strategy)
      : support_(support), strategy_(strategy) {
    const auto d = static_cast<std::size_t>(support.dim);
    lo_.resize(d);
    hi_.resize(d);
    L_.resize(d);
    lows_.resize(d);
    highs_.resize(d);
    pick_lo_.resize(d);
    pick_hi_.resize(d);
  }

  /// Searches every candidate hull H (bounds taken from n and the support),
  /// scoring g(H) = S(support in H) / prod L(H) with the box of counts L(H)
  /// placed at its smallest lower corner. Ordering: value desc, count asc,
  /// corner lexicographic asc.
  CubeResult<Int> operator()(const std::int64_t* n, bool want_witness = true) {
    const auto& s = support_;
    const int d = s.dim;
    want_witness_ = want_witness;
    have_ = false;
    for (int k = 0; k < d; ++k) {
      lows_[k].assign(1, n[k]);
      highs_[k].assign(1, n[k]);
    }
    for (std::size_t i = 0; i < s.size; ++i) {
      const std::int64_t* p = s.point(i);
      for (int k = 0; k < d; ++k) {
        if (p[k] < n[k]) lows_[k].push_back(p[k]);
        if (p[k] > n[k]) highs_[k].push_back(p[k]);
      }
    }
    double hull_work = 1.0;
    for (int k = 0; k < d; ++k) {
      dedupe(lows_[k]);
      dedupe(highs_[k]);
      hull_work *= static_cast<double>(lows_[k].size() * highs_[k].size());
    }
    const double subset_work = s.size >= 60 ? 1e30 : static_cast<double>(1ULL << s.size);
    bool use_subsets = strategy_ == CubeStrategy::Subsets ||
                       (strategy_ == CubeStrategy::Auto && subset_work <= hull_work);
    if (strategy_ == CubeStrategy::Subsets && s.size >= 60) use_subsets = false;

    if (use_subsets) {
      const std::uint64_t masks = 1ULL << s.size;
      for (std::uint64_t mask = 0; mask < masks; ++mask) {
        for (int k = 0; k < d; ++k) lo_[k] = hi_[k] = n[k];
        for (std::size_t i = 0; i < s.size; ++i) {
          if (!(mask >> i & 1ULL)) continue;
          const std::int64_t* p = s.point(i);
          for (int k = 0; k < d; ++k) {
            lo_[k] = std::min(lo_[k], p[k]);
            hi_[k] = std::max(hi_[k], p[k]);
          }
        }
        consider_hull();
      }
    } else {
      std::fill(pick_lo_.begin(), pick_lo_.end(), 0);
      std::fill(pick_hi_.begin(), pick_hi_.end(), 0);
      while (true) {
        for (int k = 0; k < d; ++k) {
          lo_[k] = lows_[k][pick_lo_[k]];
          hi_[k] = highs_[k][pick_hi_[k]];
        }
        consider_hull();
        int k = d - 1;
        for (; k >= 0; --k) {
          if (++pick_hi_[k] < highs_[k].size()) break;
          pick_hi_[k] = 0;
          if (++pick_lo_[k] < lows_[k].size()) break;
          pick_lo_[k] = 0;
        }
        if (k < 0) break;
      }
    }
    return best_;
  }

 private:
  static void dedupe(std::vector<std::int64_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  void consider_hull() {
    const auto& s = support_;
    const int d = s.dim;
    std::int64_t m = 0;
    for (int k = 0; k < d; ++k) m = std::max(m, hi_[k] - lo_[k] + 1);
    Int count{1};
    for (int k = 0; k < d; ++k) {
      L_[k] = std::max(hi_[k] - lo_[k] + 1, m - 1);
      count *= Int(L_[k]);
    }
    Int sum{0};
    for (std::size_t i = 0; i < s.size; ++i) {
      const std::int64_t* p = s.point(i);
      bool inside = true;
      for (int k = 0; k < d && inside; ++k) inside = p[k] >= lo_[k] && p[k] <= hi_[k];
      if (inside) sum += s.weights[i];
    }
    int c = have_ ? cmp_frac(sum, count, best_.num, best_.den) : 1;
    if (c < 0) return;
    if (c == 0) {
      if (count > best_.den) return;
      if (count == best_.den) {
        if (!want_witness_) return;
        bool smaller = false;
        for (int k = 0; k < d; ++k) {
          const std::int64_t corner = hi_[k] - L_[k] + 1;
          if (corner != best_.lower[k]) {
            smaller = corner < best_.lower[k];
            break;
          }
        }
        if (!smaller) return;
      }
    }
    have_ = true;
    best_.num = sum;
    best_.den = count;
    if (want_witness_) {
      best_.lower.resize(static_cast<std::size_t>(d));
      best_.counts.resize(static_cast<std::size_t>(d));
      for (int k = 0; k < d; ++k) {
        best_.lower[k] = hi_[k] - L_[k] + 1;
        best_.counts[k] = L_[k];
      }
    }
  }

  const ScaledSupport<Int>& support_;
  CubeStrategy strategy_;
  bool want_witness_ = true;
  bool have_ = false;
  CubeResult<Int> best_;
  std::vector<std::int64_t> lo_, hi_, L_;
  std::vector<std::vector<std::int64_t>> lows_, highs_;
  std::vector<std::size_t> pick_lo_, pick_hi_;
};

// ---------------------------------------------------------------------------
// Whole-box evaluation in scaled form.

template <class Int>
struct ScaledGrid {
  Box box;
  std::vector<Int> num;
  std::vector<Int> den;
  BigInt scale = 1;

  Rational value(std::size_t i) const {
    Rational q(to_big(num[i]), to_big(den[i]) * scale);
    q.canonicalize();
    return q;
  }
};

using AnyScaledGrid = std::variant<ScaledGrid<std::int64_t>, ScaledGrid<BigInt>>;

/// Whether the 64-bit kernels are safe for f evaluated at points of `query`.
bool fits_fixed_width(const GridFunction& f, const BallSpec& spec, const Box& query);

AnyScaledGrid evaluate_scaled(const GridFunction& f, const BallSpec& spec, const Box& box,
                              const EvaluateOptions& options);

}  // namespace hlmax::detail
