#pragma once

// Brute-force reference implementations. They transcribe the definitions
// literally (every radius, every admissible box, every edge) and share
// nothing with the fast kernels beyond GridFunction and exact arithmetic.

#include "hlmax/gridfn.hpp"
#include "hlmax/lattice.hpp"
#include "hlmax/maxop.hpp"

namespace hlmax::oracle {

/// max over r in [0, r_cap] of the literal window average. Rejects r_cap
/// below the largest distance from n to the support.
ArgmaxWitness brute_centered_1d(const GridFunction& f, std::int64_t n, std::int64_t r_cap);

/// Same for l1 balls in any dimension; ball points are found by scanning the
/// cube [-r, r]^d and counted directly.
ArgmaxWitness brute_centered_l1(const GridFunction& f, const LatticePoint& n, std::int64_t r_cap);

/// Every lattice box through n that meets the support, with per-axis counts
/// in [1, span_cap] differing by at most one. Rejects span_cap below the
/// largest extent of the hull of the support and n.
ArgmaxWitness brute_uncentered_cube(const GridFunction& f, const LatticePoint& n, std::int64_t span_cap);

/// Sum of |g(x + e_i) - g(x)| over edges inside the box; with `zero_extend`
/// also the edges leaving the box, against the value 0.
Rational brute_variation(const BoxGrid<Rational>& g, bool zero_extend);

}  // namespace hlmax::oracle
