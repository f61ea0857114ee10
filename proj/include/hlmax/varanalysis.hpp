#pragma once

// Total variation of maximal functions. Mf never has finite support, so the
// variation is measured on boxes and reported as a lower bound; only for
// deltas, whose maximal functions have closed forms, is it two-sided.

#include "hlmax/gridfn.hpp"
#include "hlmax/maxop.hpp"

#include <string>
#include <vector>

namespace hlmax {

/// The box of l-infinity radius R around the floor of the midpoint of the
/// support's bounding box (the origin for the zero function). Translating f
/// translates the box with it.
Box truncation_box(const GridFunction& f, std::int64_t R);

/// Smallest R for which truncation_box(f, R) covers the support.
std::int64_t support_radius(const GridFunction& f);

/// Exact variation of a grid over the edges inside its box.
Rational grid_variation(const BoxGrid<Rational>& g);

/// Variation of the maximal function over the edges of truncation_box(f, R).
/// Rejects R < support_radius(f).
Rational truncated_variation_maxfn(const GridFunction& f, const BallSpec& spec, std::int64_t R,
                                   const EvaluateOptions& options = {});

struct VariationReport {
  enum class Stop { Converged, RadiusLimit };

  BallSpec spec;
  Box truncation_box;
  Rational truncated_var;
  /// (R, truncated variation) for every radius tried, R increasing.
  std::vector<std::pair<std::int64_t, Rational>> trace;
  /// Upper end of the constant enclosure times the l1 norm of f.
  Rational theoretical_cap;
  bool cap_satisfied = false;
  Stop stop = Stop::Converged;

  /// truncated_var is a certified lower bound for the variation over Z^d;
  /// no upper bound is claimed for general f.
  static constexpr const char* kBoundKind = "lower bound";
};

/// Doubles R from max(1, support_radius(f)) until two successive variations
/// differ by less than epsilon or R reaches r_max. `constant_terms` is the K
/// of the enclosure behind the cap.
VariationReport adaptive_variation(const GridFunction& f, const BallSpec& spec, const Rational& epsilon,
                                   std::int64_t r_max, std::int64_t constant_terms = 1000);

/// An axis-parallel line {base + t e_axis : t in Z}; base[axis] is ignored.
struct AxisLine {
  int axis = 0;
  LatticePoint base;
};

/// 2 / N_{1,d}(dist_1(l, p)): the most a unit mass at p can add to the
/// variation of the centered l1 maximal function along l.
Rational line_contribution_cap_l1(const LatticePoint& p, const AxisLine& line);

/// 2 / ((k+1)^j max(1,k)^(d-j)) with k the l-infinity distance from p to l and
/// j the number of fixed coordinates at distance k: the same for the
/// uncentered cube operator.
Rational line_contribution_cap_cube(const LatticePoint& p, const AxisLine& line);

/// Exact variation of the maximal function of a unit delta over the edges of
/// [-R, R]^d, from the closed-form values. Geometry must be l1 or cube.
Rational delta_variation_closed_form(const BallSpec& spec, std::int64_t R);

/// Entry k: the summed whole-line variation of the maximal function of the
/// unit delta at the origin over all axis-parallel lines at distance k
/// (l1 distance for l1, l-infinity for cube), k = 0..K. Values along each
/// line come from the search kernels; beyond the evaluated window the line
/// decreases monotonically to 0, which the closed forms guarantee for deltas.
std::vector<Rational> delta_line_variation_by_distance(const BallSpec& spec, std::int64_t K);

}  // namespace hlmax
