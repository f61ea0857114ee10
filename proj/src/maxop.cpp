#include "hlmax/maxop.hpp"

#include "maxop_kernels.hpp"

#include <omp.h>

#include <stdexcept>
#include <string>

namespace hlmax {

std::string_view geometry_name(Geometry g) {
  switch (g) {
    case Geometry::CenteredInterval: return "centered1d";
    case Geometry::UncenteredInterval: return "uncentered1d";
    case Geometry::CenteredL1: return "l1";
    case Geometry::UncenteredCube: return "cube";
  }
  return "?";
}

Geometry parse_geometry(std::string_view name) {
  if (name == "centered1d") return Geometry::CenteredInterval;
  if (name == "uncentered1d") return Geometry::UncenteredInterval;
  if (name == "l1") return Geometry::CenteredL1;
  if (name == "cube") return Geometry::UncenteredCube;
  throw std::invalid_argument("unknown geometry '" + std::string(name) + "'");
}

void BallSpec::validate() const {
  if (dim < 1) throw std::invalid_argument("dimension must be >= 1");
  if ((geometry == Geometry::CenteredInterval || geometry == Geometry::UncenteredInterval) && dim != 1) {
    throw DimensionMismatch(std::string(geometry_name(geometry)) + " requires dimension 1");
  }
}

Rational average(const GridFunction& f, const AveragingSet& set) {
  Rational sum = 0;
  BigInt count;
  if (const auto* ball = std::get_if<L1Ball>(&set)) {
    if (ball->radius < 0) throw std::invalid_argument("average: negative radius");
    if (ball->center.dim() != f.dim()) throw DimensionMismatch("average: ball and function dimensions differ");
    for (const auto& [p, v] : f.support()) {
      if (l1_distance(p, ball->center) <= ball->radius) sum += hlmax::abs(v);
    }
    count = l1_ball_count(f.dim(), ball->radius);
  } else {
    const Box& box = std::get<Box>(set);
    if (box.dim() != f.dim()) throw DimensionMismatch("average: box and function dimensions differ");
    if (!box.valid()) throw std::invalid_argument("average: empty box");
    for (const auto& [p, v] : f.support()) {
      if (box.contains(p)) sum += hlmax::abs(v);
    }
    count = box.count();
  }
  Rational q = sum / Rational(count);
  q.canonicalize();
  return q;
}

namespace {

using detail::AnyScaledGrid;
using detail::ScaledGrid;
using detail::ScaledSupport;

constexpr std::int64_t kFixedLimit = std::int64_t{1} << 62;

void check_dims(const GridFunction& f, const BallSpec& spec, int point_dim) {
  spec.validate();
  if (f.dim() != spec.dim) throw DimensionMismatch("function dimension does not match the geometry");
  if (point_dim != spec.dim) throw DimensionMismatch("point dimension does not match the geometry");
}

// Largest l1 distance between a point of `query` and a point of `support`.
std::int64_t max_l1_reach(const Box& query, const Box& support) {
  std::int64_t r = 0;
  for (int i = 0; i < query.dim(); ++i) {
    r += std::max(std::abs(query.upper[i] - support.lower[i]), std::abs(support.upper[i] - query.lower[i]));
  }
  return r;
}

std::vector<BigInt> centered_counts(int dim, std::int64_t r_max) {
  return ShellTable(dim, r_max).counts();
}

bool fits(const ScaledSupport<BigInt>& s, const GridFunction& f, const BallSpec& spec, const Box& query) {
  BigInt total = 0;
  for (const auto& w : s.weights) total += w;
  if (total >= BigInt(kFixedLimit)) return false;
  auto sb = f.bounding_box();
  if (!sb) return true;
  if (spec.centered()) {
    return l1_ball_count(spec.dim, max_l1_reach(query, *sb)) < BigInt(kFixedLimit);
  }
  BigInt cells = 1;
  std::int64_t extent = 1;
  for (int i = 0; i < spec.dim; ++i) {
    extent = std::max(extent, std::max(query.upper[i], sb->upper[i]) - std::min(query.lower[i], sb->lower[i]) + 1);
  }
  for (int i = 0; i < spec.dim; ++i) cells *= BigInt(static_cast<long>(extent));
  return cells < BigInt(kFixedLimit);
}

ScaledSupport<std::int64_t> narrow(const ScaledSupport<BigInt>& s) {
  ScaledSupport<std::int64_t> out;
  out.dim = s.dim;
  out.size = s.size;
  out.coords = s.coords;
  out.scale = s.scale;
  out.weights.reserve(s.weights.size());
  for (const auto& w : s.weights) out.weights.push_back(to_int64(w));
  return out;
}

template <class Int>
std::vector<Int> narrow_counts(const std::vector<BigInt>& counts) {
  std::vector<Int> out;
  out.reserve(counts.size());
  for (const auto& c : counts) out.push_back(detail::from_big<Int>(c));
  return out;
}

template <class Int>
ScaledGrid<Int> sweep(const ScaledSupport<Int>& s, const BallSpec& spec, const Box& box,
                      const EvaluateOptions& options) {
  ScaledGrid<Int> out;
  out.box = box;
  out.scale = s.scale;
  const BigInt total = box.count();
  if (total > BigInt(static_cast<unsigned long>(enumeration_cap()))) {
    throw EnumerationCapExceeded("box has " + to_string(total) + " points, above the enumeration cap");
  }
  const auto n_points = static_cast<std::int64_t>(total.get_ui());
  out.num.assign(static_cast<std::size_t>(n_points), Int{0});
  out.den.assign(static_cast<std::size_t>(n_points), Int{1});
  const int d = spec.dim;

  std::vector<Int> counts;
  if (spec.centered() && s.size > 0) {
    Box sb{LatticePoint(std::vector<std::int64_t>(s.coords.begin(), s.coords.begin() + d)),
           LatticePoint(std::vector<std::int64_t>(s.coords.begin(), s.coords.begin() + d))};
    for (std::size_t i = 1; i < s.size; ++i) {
      for (int k = 0; k < d; ++k) {
        sb.lower[k] = std::min(sb.lower[k], s.point(i)[k]);
        sb.upper[k] = std::max(sb.upper[k], s.point(i)[k]);
      }
    }
    counts = narrow_counts<Int>(centered_counts(d, max_l1_reach(box, sb)));
  }

#pragma omp parallel
  {
    std::vector<std::int64_t> pt(static_cast<std::size_t>(d));
    auto locate = [&](std::int64_t idx) {
      for (int k = d - 1; k >= 0; --k) {
        const std::int64_t ext = box.extent(k);
        pt[static_cast<std::size_t>(k)] = box.lower[k] + idx % ext;
        idx /= ext;
      }
    };
    switch (spec.geometry) {
      case Geometry::CenteredInterval:
      case Geometry::CenteredL1: {
        detail::CenteredKernel<Int> kernel(s, counts);
#pragma omp for schedule(dynamic, 512)
        for (std::int64_t i = 0; i < n_points; ++i) {
          locate(i);
          auto r = kernel(pt.data());
          out.num[static_cast<std::size_t>(i)] = std::move(r.num);
          out.den[static_cast<std::size_t>(i)] = std::move(r.den);
        }
        break;
      }
      case Geometry::UncenteredInterval: {
        detail::IntervalKernel<Int> kernel(s);
#pragma omp for schedule(dynamic, 512)
        for (std::int64_t i = 0; i < n_points; ++i) {
          locate(i);
          auto r = kernel(pt[0]);
          out.num[static_cast<std::size_t>(i)] = std::move(r.num);
          out.den[static_cast<std::size_t>(i)] = std::move(r.den);
        }
        break;
      }
      case Geometry::UncenteredCube: {
        detail::CubeKernel<Int> kernel(s, options.cube_strategy);
#pragma omp for schedule(dynamic, 512)
        for (std::int64_t i = 0; i < n_points; ++i) {
          locate(i);
          auto r = kernel(pt.data(), false);
          out.num[static_cast<std::size_t>(i)] = std::move(r.num);
          out.den[static_cast<std::size_t>(i)] = std::move(r.den);
        }
        break;
      }
    }
  }
  return out;
}

Rational make_value(const BigInt& num, const BigInt& den, const BigInt& scale) {
  Rational q(num, den * scale);
  q.canonicalize();
  return q;
}

}  // namespace

namespace detail {

bool fits_fixed_width(const GridFunction& f, const BallSpec& spec, const Box& query) {
  return fits(make_scaled_support<BigInt>(f), f, spec, query);
}

AnyScaledGrid evaluate_scaled(const GridFunction& f, const BallSpec& spec, const Box& box,
                              const EvaluateOptions& options) {
  check_dims(f, spec, box.dim());
  if (!box.valid()) throw std::invalid_argument("evaluate: invalid box");
  auto big = make_scaled_support<BigInt>(f);
  if (!options.force_bigint && fits(big, f, spec, box)) {
    return sweep<std::int64_t>(narrow(big), spec, box, options);
  }
  return sweep<BigInt>(big, spec, box, options);
}

}  // namespace detail

BoxGrid<Rational> evaluate_on_box(const GridFunction& f, const BallSpec& spec, const Box& box,
                                  const EvaluateOptions& options) {
  auto scaled = detail::evaluate_scaled(f, spec, box, options);
  BoxGrid<Rational> out;
  std::visit(
      [&](const auto& g) {
        out.box = g.box;
        out.values.resize(g.num.size());
        const auto n = static_cast<std::int64_t>(g.num.size());
#pragma omp parallel for schedule(static)
        for (std::int64_t i = 0; i < n; ++i) out.values[static_cast<std::size_t>(i)] = g.value(static_cast<std::size_t>(i));
      },
      scaled);
  return out;
}

BoxGrid<Rational> evaluate_on_box_reference(const GridFunction& f, const BallSpec& spec, const Box& box) {
  check_dims(f, spec, box.dim());
  if (!box.valid()) throw std::invalid_argument("evaluate: invalid box");
  BoxGrid<Rational> out;
  out.box = box;
  const BigInt total = box.count();
  if (total > BigInt(static_cast<unsigned long>(enumeration_cap()))) {
    throw EnumerationCapExceeded("box has " + to_string(total) + " points, above the enumeration cap");
  }
  const auto n = static_cast<std::size_t>(total.get_ui());
  out.values.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.values.push_back(maximal_function(f, spec, out.point_at(i)).value);
  return out;
}

// Pointwise entry points run the arbitrary-precision kernels, so they also
// serve as the reference for the fixed-width sweeps.

ArgmaxWitness centered_max_l1(const GridFunction& f, const LatticePoint& n) {
  check_dims(f, BallSpec{Geometry::CenteredL1, f.dim()}, n.dim());
  auto s = detail::make_scaled_support<BigInt>(f);
  std::int64_t r_max = 0;
  for (const auto& [p, v] : f.support()) r_max = std::max(r_max, l1_distance(p, n));
  const auto counts = centered_counts(f.dim(), r_max);
  detail::CenteredKernel<BigInt> kernel(s, counts);
  auto r = kernel(n.data());
  return ArgmaxWitness{make_value(r.num, r.den, s.scale), L1Ball{n, r.radius}, r.den};
}

ArgmaxWitness centered_max_1d(const GridFunction& f, std::int64_t n) {
  if (f.dim() != 1) throw DimensionMismatch("centered1d requires dimension 1");
  return centered_max_l1(f, LatticePoint{n});
}

ArgmaxWitness uncentered_max_1d(const GridFunction& f, std::int64_t n) {
  if (f.dim() != 1) throw DimensionMismatch("uncentered1d requires dimension 1");
  auto s = detail::make_scaled_support<BigInt>(f);
  detail::IntervalKernel<BigInt> kernel(s);
  auto r = kernel(n);
  return ArgmaxWitness{make_value(r.num, r.den, s.scale), Box{LatticePoint{r.a}, LatticePoint{r.b}}, r.den};
}

ArgmaxWitness uncentered_max_cube(const GridFunction& f, const LatticePoint& n) {
  check_dims(f, BallSpec{Geometry::UncenteredCube, f.dim()}, n.dim());
  auto s = detail::make_scaled_support<BigInt>(f);
  detail::CubeKernel<BigInt> kernel(s, CubeStrategy::Auto);
  auto r = kernel(n.data(), true);
  std::vector<std::int64_t> upper(r.lower.size());
  for (std::size_t i = 0; i < upper.size(); ++i) upper[i] = r.lower[i] + r.counts[i] - 1;
  return ArgmaxWitness{make_value(r.num, r.den, s.scale),
                       Box{LatticePoint(r.lower), LatticePoint(std::move(upper))}, r.den};
}

ArgmaxWitness maximal_function(const GridFunction& f, const BallSpec& spec, const LatticePoint& n) {
  check_dims(f, spec, n.dim());
  switch (spec.geometry) {
    case Geometry::CenteredInterval: return centered_max_1d(f, n[0]);
    case Geometry::UncenteredInterval: return uncentered_max_1d(f, n[0]);
    case Geometry::CenteredL1: return centered_max_l1(f, n);
    case Geometry::UncenteredCube: return uncentered_max_cube(f, n);
  }
  throw std::logic_error("unreachable geometry");
}

Rational delta_centered_l1_closed_form(const LatticePoint& p, const LatticePoint& n) {
  if (p.dim() != n.dim()) throw DimensionMismatch("closed form: dimensions differ");
  return Rational(BigInt(1), l1_ball_count(p.dim(), l1_distance(p, n)));
}

Rational delta_uncentered_cube_closed_form(const LatticePoint& p, const LatticePoint& n) {
  if (p.dim() != n.dim()) throw DimensionMismatch("closed form: dimensions differ");
  const std::int64_t m = linf_distance(p, n);
  if (m == 0) return Rational(1);
  int j = 0;
  for (int i = 0; i < p.dim(); ++i) j += std::abs(n[i] - p[i]) == m ? 1 : 0;
  BigInt den = 1;
  for (int i = 0; i < p.dim(); ++i) den *= BigInt(static_cast<long>(i < j ? m + 1 : std::max<std::int64_t>(1, m)));
  return Rational(BigInt(1), den);
}

}  // namespace hlmax
