#pragma once

// Lattice points, boxes, and exact counting for dilated l1-balls
// (cross-polytopes) and admissible l-infinity boxes.

#include "hlmax/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlmax {

/// Thrown when an enumeration would produce more points/boxes than the cap.
class EnumerationCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when objects of different dimensions are combined.
class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A point of Z^d. Ordering is lexicographic.
class LatticePoint {
 public:
  LatticePoint() = default;
  explicit LatticePoint(std::vector<std::int64_t> coords);
  LatticePoint(std::initializer_list<std::int64_t> coords);

  static LatticePoint zero(int dim);
  static LatticePoint unit(int dim, int axis);

  int dim() const { return static_cast<int>(coords_.size()); }
  std::int64_t operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }
  std::int64_t& operator[](int i) { return coords_[static_cast<std::size_t>(i)]; }
  const std::vector<std::int64_t>& coords() const { return coords_; }
  const std::int64_t* data() const { return coords_.data(); }

  std::int64_t l1_norm() const;
  std::int64_t linf_norm() const;

  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;

  auto operator<=>(const LatticePoint&) const = default;
  bool operator==(const LatticePoint&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::int64_t> coords_;
};

std::int64_t l1_distance(const LatticePoint& a, const LatticePoint& b);
std::int64_t linf_distance(const LatticePoint& a, const LatticePoint& b);

/// Axis-aligned lattice box prod_i [lower_i, upper_i] (inclusive).
struct Box {
  LatticePoint lower;
  LatticePoint upper;

  static Box centered(const LatticePoint& center, std::int64_t radius);
  static Box cube(int dim, std::int64_t radius) { return centered(LatticePoint::zero(dim), radius); }

  int dim() const { return lower.dim(); }
  bool valid() const;
  bool contains(const LatticePoint& p) const;
  bool intersects(const Box& other) const;
  std::int64_t extent(int axis) const { return upper[axis] - lower[axis] + 1; }
  BigInt count() const;
  std::string to_string() const;

  auto operator<=>(const Box&) const = default;
  bool operator==(const Box&) const = default;
};

/// Values indexed by the points of a box, stored row-major with the last
/// coordinate varying fastest (lexicographic point order).
template <class T>
struct BoxGrid {
  Box box;
  std::vector<T> values;

  std::size_t index_of(const LatticePoint& p) const {
    std::size_t idx = 0;
    for (int i = 0; i < box.dim(); ++i) {
      idx = idx * static_cast<std::size_t>(box.extent(i)) + static_cast<std::size_t>(p[i] - box.lower[i]);
    }
    return idx;
  }
  LatticePoint point_at(std::size_t idx) const {
    LatticePoint p = box.lower;
    for (int i = box.dim() - 1; i >= 0; --i) {
      auto ext = static_cast<std::size_t>(box.extent(i));
      p[i] = box.lower[i] + static_cast<std::int64_t>(idx % ext);
      idx /= ext;
    }
    return p;
  }
  const T& at(const LatticePoint& p) const { return values[index_of(p)]; }
};

/// Default cap on enumerated points; overridable through HLMAX_ENUMERATION_CAP.
std::size_t enumeration_cap();
inline constexpr std::size_t kDefaultEnumerationCap = 10'000'000;

/// Lattice-point counts N_{1,d}(k) = #{p in Z^d : |p|_1 <= k} for one
/// dimension and all radii up to k_max. Built with the recurrence obtained by
/// fixing the last coordinate, N_{1,d}(k) = N_{1,d-1}(k) + 2 sum_{j<k} N_{1,d-1}(j),
/// at a cost of O(d * k_max) big-integer additions. Immutable once built.
class ShellTable {
 public:
  ShellTable(int dim, std::int64_t k_max);

  int dim() const { return dim_; }
  std::int64_t k_max() const { return static_cast<std::int64_t>(counts_.size()) - 1; }
  const BigInt& count(std::int64_t k) const { return counts_.at(static_cast<std::size_t>(k)); }
  /// Points at exact l1 distance k: N(k) - N(k-1), with N(-1) = 0.
  BigInt shell(std::int64_t k) const;
  const std::vector<BigInt>& counts() const { return counts_; }

 private:
  int dim_;
  std::vector<BigInt> counts_;
};

BigInt l1_ball_count(int dim, std::int64_t k);

/// All p with |p|_1 <= k in lexicographic order. Throws EnumerationCapExceeded
/// when N_{1,d}(k) exceeds `cap`.
std::vector<LatticePoint> l1_ball_points(int dim, std::int64_t k, std::size_t cap = enumeration_cap());

struct CountingViolation {
  std::int64_t k;
  Rational lhs;
  Rational rhs;
};

/// Strict log-concavity N(k)^2 > N(k+1) N(k-1) for 1 <= k <= k_max.
std::vector<CountingViolation> check_log_concavity(int dim, std::int64_t k_max);

/// 1/N(k) - 1/N(k+1) > 1/N(k+1) - 1/N(k+2) for 0 <= k <= k_max.
std::vector<CountingViolation> check_gap_monotonicity(int dim, std::int64_t k_max);

/// Per-axis point counts of discrete l-infinity cubes differ by at most one;
/// every such box is the lattice trace of a closed real cube.
bool is_admissible_cube_box(const Box& box);

/// A closed real cube prod_i [center_i - radius, center_i + radius].
struct RealCube {
  std::vector<Rational> center;
  Rational radius;
};

/// Explicit real cube whose lattice points are exactly `box`
/// (side 2r = max_i L_i - 1). Requires an admissible box.
RealCube realize_box(const Box& box);

/// Integer points of a real cube, as a box (empty optional if none).
std::optional<Box> lattice_trace(const RealCube& cube);

/// Visits every admissible box B with `point` in B, B intersecting
/// `support_box`, and per-axis counts in [1, max_side]. Order: by count
/// vector (lexicographic), then lower corner (lexicographic).
void for_each_admissible_box(const LatticePoint& point, const Box& support_box, std::int64_t max_side,
                             const std::function<void(const Box&)>& visit);

std::vector<Box> admissible_boxes_through(const LatticePoint& point, const Box& support_box,
                                          std::int64_t max_side, std::size_t cap = enumeration_cap());

}  // namespace hlmax
