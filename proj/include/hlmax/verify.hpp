#pragma once

// Executable checks of the sharp inequalities: sharpness records, the 1-D
// uncentered chain, seeded random inputs, two-point extremizer scans, and the
// canned suites behind `hlmax verify --suite`.

#include "hlmax/gridfn.hpp"
#include "hlmax/maxop.hpp"
#include "hlmax/varanalysis.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hlmax {

struct SharpnessRecord {
  BallSpec spec;
  /// Canonical text of the support, e.g. "(0,0):1 (1,0):1/2".
  std::string support;
  std::size_t support_size = 0;
  Rational l1;
  /// Truncated variation of the maximal function over the l1 norm.
  Rational ratio;
  /// Certified upper bound for the sharp constant.
  Rational bound;
  Rational gap;
  bool is_delta = false;
  std::int64_t radius = 0;
  VariationReport::Stop stop = VariationReport::Stop::Converged;
  std::vector<std::pair<std::int64_t, Rational>> trace;
};

std::string support_text(const GridFunction& f);

/// Adaptive variation of the maximal function of f against the constant
/// bound. Rejects the zero function.
SharpnessRecord verify_inequality(const GridFunction& f, const BallSpec& spec, const Rational& epsilon,
                                  std::int64_t r_max = 1 << 14, std::int64_t constant_terms = 1000);

struct UncenteredChainReport {
  Rational var_maxfn;  // truncated, a lower bound
  Rational var_f;
  Rational two_l1;
  std::int64_t radius = 0;
  bool maxfn_below_var = false;
  bool var_below_two_l1 = false;

  bool holds() const { return maxfn_below_var && var_below_two_l1; }
};

/// Var M~f <= Var f <= 2 ||f||_1 in one dimension. Rejects d != 1 and f = 0.
UncenteredChainReport verify_uncentered_var_bound_1d(const GridFunction& f, const Rational& epsilon = Rational(1, 1000),
                                                     std::int64_t r_max = 1 << 14);

/// `support_count` distinct points uniform in [-support_radius, support_radius]^d
/// (std::mt19937_64 seeded with `seed`), values p/q with p, q uniform in
/// [1, value_bound].
GridFunction random_gridfn(std::uint64_t seed, int d, std::int64_t support_radius, std::size_t support_count,
                           std::int64_t value_bound);

struct TwoPointFamily {
  /// Offsets v with 1 <= |v|_1 <= max_distance, one per orbit of the
  /// coordinate reflections and permutations.
  std::int64_t max_distance = 5;
  /// f = delta_0 + rho delta_v for every rho listed.
  std::vector<Rational> ratios;
  bool include_delta = true;

  static std::vector<Rational> default_ratios();
};

std::vector<LatticePoint> two_point_offsets(int d, std::int64_t max_distance);

struct ScanResult {
  /// Sorted by gap, then support text.
  std::vector<SharpnessRecord> records;
  /// Smallest gap among non-delta records (the observed sharpness margin).
  Rational margin;
  bool all_non_delta_positive = true;
  bool no_negative_gap = true;
  /// Every delta gap is below every non-delta gap.
  bool deltas_on_top = true;
};

/// Each member is measured at the fixed truncation radius R.
ScanResult scan_extremizers(const BallSpec& spec, const TwoPointFamily& family, std::int64_t R,
                            std::int64_t constant_terms = 1000);

struct OracleAgreement {
  std::size_t instances = 0;
  std::size_t points = 0;
  std::size_t value_agreements = 0;
  std::size_t witness_agreements = 0;
  std::vector<std::string> disagreements;

  bool all_agree() const { return value_agreements == points && witness_agreements == points; }
};

/// Seeded random instances (support in [-6, 6]^d, 1 to 5 points, values with
/// numerator and denominator at most 16), each queried at several points of
/// [-8, 8]^d, fast kernels against the brute-force oracles.
OracleAgreement oracle_equivalence(const BallSpec& spec, std::uint64_t seed, std::size_t instances);

struct SuiteCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  std::vector<SuiteCheck> checks;
  /// Serialized failing instances, for replay.
  std::vector<std::string> violations;

  bool passed() const;
};

/// "lemmas", "sharpness" or "oracle"; throws std::invalid_argument otherwise.
SuiteResult run_suite(std::string_view name, std::uint64_t seed);

}  // namespace hlmax
