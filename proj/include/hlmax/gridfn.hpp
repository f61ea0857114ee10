#pragma once

// Finitely supported functions on Z^d with exact values, their norms and
// total variation, and the decomposition of 1-D sequences into strings of
// local maxima and minima.

#include "hlmax/lattice.hpp"
#include "hlmax/rational.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace hlmax {

/// f : Z^d -> Q with finite support. Zero values are never stored; an absent
/// point means 0. Immutable after construction.
class GridFunction {
 public:
  explicit GridFunction(int dim);
  /// Rejects duplicate points and points of the wrong dimension; drops zeros.
  GridFunction(int dim, std::vector<std::pair<LatticePoint, Rational>> entries);

  static GridFunction delta(const LatticePoint& p, const Rational& value = Rational(1));

  int dim() const { return dim_; }
  const std::map<LatticePoint, Rational>& support() const { return values_; }
  std::size_t support_size() const { return values_.size(); }
  bool is_zero() const { return values_.empty(); }
  Rational at(const LatticePoint& p) const;

  /// |f|, the form every maximal operator works on.
  GridFunction absolutize() const;
  GridFunction scaled(const Rational& c) const;
  GridFunction translated(const LatticePoint& shift) const;
  /// Applies a permutation of the coordinate axes: new[i] = old[perm[i]].
  GridFunction permuted(const std::vector<int>& perm) const;

  std::optional<Box> bounding_box() const;

  bool operator==(const GridFunction&) const = default;

 private:
  int dim_;
  std::map<LatticePoint, Rational> values_;
};

/// p in [1, inf]; `exact` is set for p = 1, p = inf, and integer p whenever
/// the p-th root is rational. `approx` is always set (correctly rounded from a
/// 256-bit evaluation).
struct NormValue {
  std::optional<Rational> exact;
  double approx = 0.0;
};

struct NormOrder {
  static NormOrder infinity() { return NormOrder{0.0, true}; }
  static NormOrder finite(double p) { return NormOrder{p, false}; }
  double p = 1.0;
  bool is_infinite = false;
};

NormValue lp_norm(const GridFunction& f, NormOrder p);
Rational l1_norm(const GridFunction& f);

/// sum_i sum_n |f(n + e_i) - f(n)|, exact.
Rational total_variation(const GridFunction& f);

/// What the caller knows about a 1-D sequence beyond the truncation window.
/// `monotone` means values outside the window move monotonically from the
/// boundary value towards `limit` (constant when they are equal); otherwise
/// the side is open and nothing beyond the window is accounted for.
struct TailContract {
  Rational limit = 0;
  bool monotone = false;

  static TailContract open() { return {}; }
  static TailContract to_limit(const Rational& limit) { return {limit, true}; }
};

/// Values v[t] at positions first_index + t, plus tail contracts.
struct LineSequence {
  std::int64_t first_index = 0;
  std::vector<Rational> values;
  TailContract left = TailContract::open();
  TailContract right = TailContract::open();
};

/// A maximal constant run [lo, hi]; lo/hi may be infinite when the run
/// continues through a constant tail.
struct ValueString {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  bool lo_infinite = false;
  bool hi_infinite = false;
  Rational value;
  /// Classified from one side only because it touches an open truncation end.
  bool touches_truncation = false;

  bool operator==(const ValueString&) const = default;
};

struct StringDecomposition {
  std::vector<ValueString> maxima;
  std::vector<ValueString> minima;
  /// Variation over the window plus, for monotone sides, |boundary - limit|.
  Rational variation;
  /// variation - 2 * (sum of maxima - sum of minima).
  Rational boundary_correction;
  bool constant = false;
};

/// Strings of local maxima/minima of the sequence (interleaved
/// ... max < min < max ...). Tail runs sitting at the limit value are treated
/// as the limit itself and are not listed as minima.
StringDecomposition string_decomposition(const LineSequence& seq);

/// Values of g along {base + t e_axis} for the part of the line inside g's box.
LineSequence line_restriction(const BoxGrid<Rational>& g, int axis, const LatticePoint& base);

}  // namespace hlmax
