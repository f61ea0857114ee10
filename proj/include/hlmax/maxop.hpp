#pragma once

// Discrete Hardy-Littlewood maximal operators on finitely supported
// functions, evaluated exactly.
//
//   centered interval  Mf(n)  = max_r  (sum_{|k|<=r} |f(n+k)|) / (2r+1)          (d = 1)
//   uncentered interval       = max over [n-r, n+s] of the average of |f|        (d = 1)
//   centered l1 ball   M1f(n) = max_r  (sum_{|m|_1<=r} |f(n+m)|) / N_{1,d}(r)
//   uncentered cube            = max over lattice traces of closed real cubes
//                                containing n, i.e. boxes whose per-axis point
//                                counts differ by at most one
//
// The suprema are attained and the searches below are finite:
//  * centered: between two consecutive support distances the ball sum is
//    constant while the count grows, so only r = 0 and r = |n - p| for
//    support points p can be optimal (smallest optimal radius reported);
//  * uncentered: an optimal box can always be shrunk to the smallest
//    admissible box around hull(T + {n}), T the captured support points,
//    whose counts are L_i = max(e_i, max_j e_j - 1) for hull extents e_i.
//    The optimum is therefore max_T S(T) / prod_i L_i(T).

#include "hlmax/gridfn.hpp"
#include "hlmax/lattice.hpp"
#include "hlmax/rational.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace hlmax {

enum class Geometry {
  CenteredInterval,
  UncenteredInterval,
  CenteredL1,
  UncenteredCube,
};

std::string_view geometry_name(Geometry g);
/// Accepts the CLI spellings centered1d, uncentered1d, l1, cube.
Geometry parse_geometry(std::string_view name);

struct BallSpec {
  Geometry geometry = Geometry::CenteredInterval;
  int dim = 1;

  /// Throws DimensionMismatch for interval geometries with dim != 1.
  void validate() const;
  bool centered() const { return geometry == Geometry::CenteredInterval || geometry == Geometry::CenteredL1; }
  bool operator==(const BallSpec&) const = default;
};

/// Closed l1 ball {center + m : |m|_1 <= radius}; in d = 1 a centered interval.
struct L1Ball {
  LatticePoint center;
  std::int64_t radius = 0;
  bool operator==(const L1Ball&) const = default;
};

using AveragingSet = std::variant<L1Ball, Box>;

/// Mean of |f| over the lattice points of the set.
Rational average(const GridFunction& f, const AveragingSet& set);

/// Value plus the set realizing it. Tie-breaks: smallest radius for
/// centered geometries; smallest point count, then lexicographically
/// smallest lower corner for uncentered ones.
struct ArgmaxWitness {
  Rational value;
  AveragingSet set;
  BigInt count;

  std::int64_t radius() const { return std::get<L1Ball>(set).radius; }
  const Box& box() const { return std::get<Box>(set); }
};

ArgmaxWitness centered_max_1d(const GridFunction& f, std::int64_t n);
ArgmaxWitness uncentered_max_1d(const GridFunction& f, std::int64_t n);
ArgmaxWitness centered_max_l1(const GridFunction& f, const LatticePoint& n);
ArgmaxWitness uncentered_max_cube(const GridFunction& f, const LatticePoint& n);

/// Dispatches on the geometry.
ArgmaxWitness maximal_function(const GridFunction& f, const BallSpec& spec, const LatticePoint& n);

/// Exact value of M1 applied to a unit delta at p, evaluated at n.
Rational delta_centered_l1_closed_form(const LatticePoint& p, const LatticePoint& n);
/// Exact value of the uncentered cube operator on a unit delta at p, at n:
/// 1 if n = p, else 1 / ((M+1)^j * max(1,M)^(d-j)) with M = |n-p|_inf and
/// j the number of coordinates attaining M.
Rational delta_uncentered_cube_closed_form(const LatticePoint& p, const LatticePoint& n);

/// Search strategy for the uncentered cube kernel. Both are exact; Auto
/// picks the cheaper one per point.
enum class CubeStrategy { Auto, Subsets, Hulls };

struct EvaluateOptions {
  /// Force the arbitrary-precision kernels even when 64-bit arithmetic
  /// is provably safe.
  bool force_bigint = false;
  CubeStrategy cube_strategy = CubeStrategy::Auto;
};

/// The maximal function at every point of `box`. Points are evaluated in
/// parallel (OpenMP) by the fixed-width kernels when they are safe.
BoxGrid<Rational> evaluate_on_box(const GridFunction& f, const BallSpec& spec, const Box& box,
                                  const EvaluateOptions& options = {});

/// Serial reference: one pointwise call per point, same results.
BoxGrid<Rational> evaluate_on_box_reference(const GridFunction& f, const BallSpec& spec, const Box& box);

}  // namespace hlmax
