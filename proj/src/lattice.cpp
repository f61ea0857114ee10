#include "hlmax/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace hlmax {

LatticePoint::LatticePoint(std::vector<std::int64_t> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw std::invalid_argument("lattice point needs dimension >= 1");
}

LatticePoint::LatticePoint(std::initializer_list<std::int64_t> coords) : LatticePoint(std::vector<std::int64_t>(coords)) {}

LatticePoint LatticePoint::zero(int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  return LatticePoint(std::vector<std::int64_t>(static_cast<std::size_t>(dim), 0));
}

LatticePoint LatticePoint::unit(int dim, int axis) {
  LatticePoint p = zero(dim);
  if (axis < 0 || axis >= dim) throw std::out_of_range("axis out of range");
  p[axis] = 1;
  return p;
}

std::int64_t LatticePoint::l1_norm() const {
  std::int64_t s = 0;
  for (auto c : coords_) s += c < 0 ? -c : c;
  return s;
}

std::int64_t LatticePoint::linf_norm() const {
  std::int64_t s = 0;
  for (auto c : coords_) s = std::max(s, c < 0 ? -c : c);
  return s;
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("adding points of different dimension");
  LatticePoint r = *this;
  for (int i = 0; i < dim(); ++i) r[i] += o[i];
  return r;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  if (dim() != o.dim()) throw DimensionMismatch("subtracting points of different dimension");
  LatticePoint r = *this;
  for (int i = 0; i < dim(); ++i) r[i] -= o[i];
  return r;
}

std::string LatticePoint::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

std::int64_t l1_distance(const LatticePoint& a, const LatticePoint& b) { return (a - b).l1_norm(); }
std::int64_t linf_distance(const LatticePoint& a, const LatticePoint& b) { return (a - b).linf_norm(); }

Box Box::centered(const LatticePoint& center, std::int64_t radius) {
  if (radius < 0) throw std::invalid_argument("box radius must be >= 0");
  Box b{center, center};
  for (int i = 0; i < center.dim(); ++i) {
    b.lower[i] -= radius;
    b.upper[i] += radius;
  }
  return b;
}

bool Box::valid() const {
  if (lower.dim() != upper.dim() || lower.dim() < 1) return false;
  for (int i = 0; i < lower.dim(); ++i) {
    if (lower[i] > upper[i]) return false;
  }
  return true;
}

bool Box::contains(const LatticePoint& p) const {
  if (p.dim() != dim()) throw DimensionMismatch("point and box dimensions differ");
  for (int i = 0; i < dim(); ++i) {
    if (p[i] < lower[i] || p[i] > upper[i]) return false;
  }
  return true;
}

bool Box::intersects(const Box& other) const {
  if (other.dim() != dim()) throw DimensionMismatch("box dimensions differ");
  for (int i = 0; i < dim(); ++i) {
    if (other.upper[i] < lower[i] || other.lower[i] > upper[i]) return false;
  }
  return true;
}

BigInt Box::count() const {
  BigInt c = 1;
  for (int i = 0; i < dim(); ++i) c *= static_cast<long>(extent(i));
  return c;
}

std::string Box::to_string() const { return "[" + lower.to_string() + ", " + upper.to_string() + "]"; }

std::size_t enumeration_cap() {
  if (const char* env = std::getenv("HLMAX_ENUMERATION_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultEnumerationCap;
}

// ---------------------------------------------------------------------------
// Counting

ShellTable::ShellTable(int dim, std::int64_t k_max) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("ShellTable: dimension must be >= 1");
  if (k_max < 0) throw std::invalid_argument("ShellTable: k_max must be >= 0");
  const auto n = static_cast<std::size_t>(k_max) + 1;
  counts_.resize(n);
  for (std::size_t k = 0; k < n; ++k) counts_[k] = 2 * static_cast<long>(k) + 1;
  std::vector<BigInt> next(n);
  for (int d = 2; d <= dim; ++d) {
    BigInt running = 0;  // sum_{j<k} N_{1,d-1}(j)
    for (std::size_t k = 0; k < n; ++k) {
      next[k] = counts_[k] + 2 * running;
      running += counts_[k];
    }
    counts_.swap(next);
  }
}

BigInt ShellTable::shell(std::int64_t k) const {
  if (k < 0) return 0;
  if (k == 0) return counts_.at(0);
  return counts_.at(static_cast<std::size_t>(k)) - counts_.at(static_cast<std::size_t>(k - 1));
}

BigInt l1_ball_count(int dim, std::int64_t k) {
  if (dim < 1) throw std::invalid_argument("l1_ball_count: dimension must be >= 1");
  if (k < 0) throw std::invalid_argument("l1_ball_count: radius must be >= 0");
  return ShellTable(dim, k).count(k);
}

namespace {

void enumerate_ball(int axis, std::int64_t budget, std::vector<std::int64_t>& coords,
                    std::vector<LatticePoint>& out) {
  const int dim = static_cast<int>(coords.size());
  if (axis == dim) {
    out.emplace_back(coords);
    return;
  }
  for (std::int64_t x = -budget; x <= budget; ++x) {
    coords[static_cast<std::size_t>(axis)] = x;
    enumerate_ball(axis + 1, budget - (x < 0 ? -x : x), coords, out);
  }
}

}  // namespace

std::vector<LatticePoint> l1_ball_points(int dim, std::int64_t k, std::size_t cap) {
  BigInt n = l1_ball_count(dim, k);
  if (n > BigInt(static_cast<unsigned long>(cap))) {
    throw EnumerationCapExceeded("l1 ball of radius " + std::to_string(k) + " in dimension " + std::to_string(dim) +
                                 " has " + n.get_str() + " points, above the enumeration cap " +
                                 std::to_string(cap));
  }
  std::vector<LatticePoint> out;
  out.reserve(n.get_ui());
  std::vector<std::int64_t> coords(static_cast<std::size_t>(dim), 0);
  enumerate_ball(0, k, coords, out);
  return out;
}

std::vector<CountingViolation> check_log_concavity(int dim, std::int64_t k_max) {
  if (dim < 1) throw std::invalid_argument("check_log_concavity: dimension must be >= 1");
  if (k_max < 1) throw std::invalid_argument("check_log_concavity: k_max must be >= 1");
  ShellTable table(dim, k_max + 1);
  std::vector<CountingViolation> bad;
  for (std::int64_t k = 1; k <= k_max; ++k) {
    BigInt lhs = table.count(k) * table.count(k);
    BigInt rhs = table.count(k + 1) * table.count(k - 1);
    if (!(lhs > rhs)) bad.push_back({k, Rational(lhs), Rational(rhs)});
  }
  return bad;
}

std::vector<CountingViolation> check_gap_monotonicity(int dim, std::int64_t k_max) {
  if (dim < 1) throw std::invalid_argument("check_gap_monotonicity: dimension must be >= 1");
  if (k_max < 0) throw std::invalid_argument("check_gap_monotonicity: k_max must be >= 0");
  ShellTable table(dim, k_max + 2);
  std::vector<CountingViolation> bad;
  auto inv = [&](std::int64_t k) { return Rational(BigInt(1), table.count(k)); };
  for (std::int64_t k = 0; k <= k_max; ++k) {
    Rational lhs = inv(k) - inv(k + 1);
    Rational rhs = inv(k + 1) - inv(k + 2);
    if (!(lhs > rhs)) bad.push_back({k, lhs, rhs});
  }
  return bad;
}

// ---------------------------------------------------------------------------
// Admissible cube boxes

bool is_admissible_cube_box(const Box& box) {
  if (!box.valid()) return false;
  std::int64_t lo = box.extent(0), hi = box.extent(0);
  for (int i = 1; i < box.dim(); ++i) {
    lo = std::min(lo, box.extent(i));
    hi = std::max(hi, box.extent(i));
  }
  return hi - lo <= 1;
}

RealCube realize_box(const Box& box) {
  if (!is_admissible_cube_box(box)) {
    throw std::invalid_argument("realize_box: per-axis counts differ by more than one: " + box.to_string());
  }
  std::int64_t max_count = 0;
  for (int i = 0; i < box.dim(); ++i) max_count = std::max(max_count, box.extent(i));
  RealCube cube;
  cube.radius = Rational(max_count - 1, 2);
  cube.radius.canonicalize();
  for (int i = 0; i < box.dim(); ++i) {
    Rational c(box.lower[i] + box.upper[i], 2);
    c.canonicalize();
    cube.center.push_back(c);
  }
  return cube;
}

std::optional<Box> lattice_trace(const RealCube& cube) {
  const int dim = static_cast<int>(cube.center.size());
  if (dim < 1 || cube.radius < 0) throw std::invalid_argument("lattice_trace: malformed cube");
  Box b{LatticePoint::zero(dim), LatticePoint::zero(dim)};
  for (int i = 0; i < dim; ++i) {
    Rational lo = cube.center[static_cast<std::size_t>(i)] - cube.radius;
    Rational hi = cube.center[static_cast<std::size_t>(i)] + cube.radius;
    BigInt l, u;
    mpz_cdiv_q(l.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(u.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (l > u) return std::nullopt;
    b.lower[i] = to_int64(l);
    b.upper[i] = to_int64(u);
  }
  return b;
}

namespace {

void counts_recurse(int axis, std::int64_t lo, std::int64_t hi, std::int64_t max_side, std::vector<std::int64_t>& counts,
                    const std::function<void(const std::vector<std::int64_t>&)>& emit) {
  const int dim = static_cast<int>(counts.size());
  if (axis == dim) {
    emit(counts);
    return;
  }
  for (std::int64_t c = 1; c <= max_side; ++c) {
    std::int64_t nlo = axis == 0 ? c : std::min(lo, c);
    std::int64_t nhi = axis == 0 ? c : std::max(hi, c);
    if (nhi - nlo > 1) continue;
    counts[static_cast<std::size_t>(axis)] = c;
    counts_recurse(axis + 1, nlo, nhi, max_side, counts, emit);
  }
}

}  // namespace

void for_each_admissible_box(const LatticePoint& point, const Box& support_box, std::int64_t max_side,
                             const std::function<void(const Box&)>& visit) {
  if (!support_box.valid()) throw std::invalid_argument("admissible boxes: invalid support box");
  if (support_box.dim() != point.dim()) throw DimensionMismatch("admissible boxes: dimension mismatch");
  if (max_side < 1) return;
  const int dim = point.dim();
  std::vector<std::int64_t> counts(static_cast<std::size_t>(dim), 0);
  std::vector<std::int64_t> first(static_cast<std::size_t>(dim)), last(static_cast<std::size_t>(dim));
  counts_recurse(0, 0, 0, max_side, counts, [&](const std::vector<std::int64_t>& L) {
    for (int i = 0; i < dim; ++i) {
      auto ui = static_cast<std::size_t>(i);
      // lower corner l with l <= point <= l + L - 1 and [l, l+L-1] meeting the support range
      first[ui] = std::max(point[i] - L[ui] + 1, support_box.lower[i] - L[ui] + 1);
      last[ui] = std::min(point[i], support_box.upper[i]);
      if (first[ui] > last[ui]) return;
    }
    Box b{point, point};
    std::vector<std::int64_t> l = first;
    while (true) {
      for (int i = 0; i < dim; ++i) {
        auto ui = static_cast<std::size_t>(i);
        b.lower[i] = l[ui];
        b.upper[i] = l[ui] + L[ui] - 1;
      }
      visit(b);
      int axis = dim - 1;
      while (axis >= 0) {
        auto ua = static_cast<std::size_t>(axis);
        if (l[ua] < last[ua]) {
          ++l[ua];
          break;
        }
        l[ua] = first[ua];
        --axis;
      }
      if (axis < 0) break;
    }
  });
}

std::vector<Box> admissible_boxes_through(const LatticePoint& point, const Box& support_box, std::int64_t max_side,
                                          std::size_t cap) {
  std::vector<Box> out;
  for_each_admissible_box(point, support_box, max_side, [&](const Box& b) {
    if (out.size() >= cap) {
      throw EnumerationCapExceeded("admissible box enumeration exceeded the cap of " + std::to_string(cap));
    }
    out.push_back(b);
  });
  return out;
}

}  // namespace hlmax
