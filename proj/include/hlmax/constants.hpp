#pragma once

// Sharp constants of the variation inequalities for delta-extremal maximal
// operators, as exact partial sums and certified enclosures.
//
//   centered l1 ball:  C(d) = 2d (1 + sum_{k>=1} (N_{1,d-1}(k) - N_{1,d-1}(k-1)) / N_{1,d}(k)),  d >= 2
//   uncentered cube:   C~(d) = 2d (1 + sum_{k>=1} (1/k) ((2/(k+1) + (2k-1)/k)^(d-1) - ((2k-1)/k)^(d-1)))
//
// In one dimension both centered operators share the constant 2, exposed
// separately as centered_constant_1d().

#include "hlmax/maxop.hpp"
#include "hlmax/rational.hpp"

#include <string>
#include <string_view>

namespace hlmax {

enum class ConstantKind { CenteredL1, UncenteredCube };

std::string_view constant_kind_name(ConstantKind kind);
/// Accepts "centered" and "uncentered".
ConstantKind parse_constant_kind(std::string_view name);

/// Sharp constant for the centered 1-D operator.
Rational centered_constant_1d();

/// k-th series term including the factor 2d (term 0 is 2d).
Rational centered_constant_term(int d, std::int64_t k);
Rational uncentered_constant_term(int d, std::int64_t k);

/// Exact partial sums through k = K. The centered one rejects d < 2.
Rational centered_constant_partial(int d, std::int64_t K);
Rational uncentered_constant_partial(int d, std::int64_t K);

struct ConstantEnclosure {
  int d = 0;
  ConstantKind kind = ConstantKind::CenteredL1;
  std::int64_t terms_used = 0;
  Rational lower;
  Rational upper;
  /// upper - lower = majorant / (K + 1).
  Rational tail;
  /// term_k <= majorant / (k (k + 1)) for every k > K.
  Rational majorant;
  /// How the tail bound was certified, in plain text.
  std::string certificate;

  Rational width() const { return upper - lower; }
};

/// Throws std::invalid_argument when no majorant on the fixed ladder can be
/// certified from K + 1 onwards.
ConstantEnclosure constant_enclosure(int d, std::int64_t K, ConstantKind kind);

/// A certified upper bound for the sharp constant of the operator, used as
/// the bound in sharpness records: 2 for every 1-D operator, else the upper
/// end of the enclosure with K terms.
Rational sharp_constant_upper(const BallSpec& spec, std::int64_t K = 1000);

}  // namespace hlmax
