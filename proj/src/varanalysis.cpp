#include "hlmax/varanalysis.hpp"

#include "hlmax/constants.hpp"
#include "maxop_kernels.hpp"

#include <stdexcept>

namespace hlmax {

namespace {

std::int64_t floor_half(std::int64_t v) { return v >= 0 ? v / 2 : -((-v + 1) / 2); }

LatticePoint truncation_center(const GridFunction& f) {
  auto bb = f.bounding_box();
  if (!bb) return LatticePoint::zero(f.dim());
  LatticePoint c = bb->lower;
  for (int i = 0; i < f.dim(); ++i) c[i] = floor_half(bb->lower[i] + bb->upper[i]);
  return c;
}

Rational abs_diff(const BigInt& an, const BigInt& ad, const BigInt& bn, const BigInt& bd) {
  Rational q(BigInt(an * bd - bn * ad), BigInt(ad * bd));
  q.canonicalize();
  return hlmax::abs(q);
}

// Per line, only the first value, the turning points and the last value
// matter: along monotone stretches the differences telescope.
template <class Int>
Rational scaled_grid_variation(const std::vector<Int>& num, const std::vector<Int>& den, const Box& box,
                               const BigInt& scale) {
  const int d = box.dim();
  std::vector<std::int64_t> ext(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) ext[static_cast<std::size_t>(i)] = box.extent(i);
  const auto total = static_cast<std::int64_t>(num.size());

  std::vector<Rational> line_sums;
  for (int a = 0; a < d; ++a) {
    std::int64_t stride = 1;
    for (int i = a + 1; i < d; ++i) stride *= ext[static_cast<std::size_t>(i)];
    const std::int64_t len = ext[static_cast<std::size_t>(a)];
    if (len < 2) continue;
    const std::int64_t lines = total / len;
    const std::size_t offset = line_sums.size();
    line_sums.resize(offset + static_cast<std::size_t>(lines));
#pragma omp parallel
    {
      std::vector<std::int64_t> kept;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t id = 0; id < lines; ++id) {
        const std::int64_t outer = id / stride, inner = id % stride;
        const std::int64_t base = outer * len * stride + inner;
        auto at = [&](std::int64_t t) { return static_cast<std::size_t>(base + t * stride); };
        kept.clear();
        kept.push_back(0);
        std::int64_t last = 0;  // last position with a value different from its predecessor run
        int dir = 0;
        for (std::int64_t t = 1; t < len; ++t) {
          const int c = detail::cmp_frac(num[at(t)], den[at(t)], num[at(last)], den[at(last)]);
          if (c == 0) continue;
          if (dir != 0 && c != dir) kept.push_back(last);
          dir = c;
          last = t;
        }
        if (kept.back() != last) kept.push_back(last);
        Rational s = 0;
        for (std::size_t k = 1; k < kept.size(); ++k) {
          const auto i0 = at(kept[k - 1]), i1 = at(kept[k]);
          s += abs_diff(detail::to_big(num[i0]), detail::to_big(den[i0]), detail::to_big(num[i1]),
                        detail::to_big(den[i1]));
        }
        line_sums[offset + static_cast<std::size_t>(id)] = std::move(s);
      }
    }
  }
  Rational v = tree_sum(line_sums) / Rational(scale);
  v.canonicalize();
  return v;
}

}  // namespace

Box truncation_box(const GridFunction& f, std::int64_t R) {
  if (R < 0) throw std::invalid_argument("truncation radius must be >= 0");
  return Box::centered(truncation_center(f), R);
}

std::int64_t support_radius(const GridFunction& f) {
  auto bb = f.bounding_box();
  if (!bb) return 0;
  const LatticePoint c = truncation_center(f);
  std::int64_t r = 0;
  for (int i = 0; i < f.dim(); ++i) r = std::max({r, c[i] - bb->lower[i], bb->upper[i] - c[i]});
  return r;
}

Rational grid_variation(const BoxGrid<Rational>& g) {
  // Rationals sharing denominator 1 in scaled form.
  std::vector<BigInt> num, den;
  num.reserve(g.values.size());
  den.reserve(g.values.size());
  for (const auto& v : g.values) {
    num.push_back(v.get_num());
    den.push_back(v.get_den());
  }
  return scaled_grid_variation<BigInt>(num, den, g.box, BigInt(1));
}

Rational truncated_variation_maxfn(const GridFunction& f, const BallSpec& spec, std::int64_t R,
                                   const EvaluateOptions& options) {
  if (R < support_radius(f)) throw std::invalid_argument("truncation radius below the support radius");
  const Box box = truncation_box(f, R);
  auto scaled = detail::evaluate_scaled(f, spec, box, options);
  return std::visit([](const auto& g) { return scaled_grid_variation(g.num, g.den, g.box, g.scale); }, scaled);
}

VariationReport adaptive_variation(const GridFunction& f, const BallSpec& spec, const Rational& epsilon,
                                   std::int64_t r_max, std::int64_t constant_terms) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be > 0");
  spec.validate();
  VariationReport rep;
  rep.spec = spec;
  std::int64_t R = std::max<std::int64_t>(1, support_radius(f));
  r_max = std::max(r_max, R);
  while (true) {
    Rational v = truncated_variation_maxfn(f, spec, R);
    const bool converged = !rep.trace.empty() && hlmax::abs(Rational(v - rep.trace.back().second)) < epsilon;
    rep.trace.emplace_back(R, v);
    if (converged) {
      rep.stop = VariationReport::Stop::Converged;
      break;
    }
    if (R >= r_max) {
      rep.stop = VariationReport::Stop::RadiusLimit;
      break;
    }
    R = std::min(2 * R, r_max);
  }
  rep.truncation_box = truncation_box(f, rep.trace.back().first);
  rep.truncated_var = rep.trace.back().second;
  rep.theoretical_cap = sharp_constant_upper(spec, constant_terms) * l1_norm(f);
  rep.cap_satisfied = rep.truncated_var <= rep.theoretical_cap;
  return rep;
}

namespace {

void check_line(const LatticePoint& p, const AxisLine& line) {
  if (p.dim() != line.base.dim()) throw DimensionMismatch("line and point dimensions differ");
  if (line.axis < 0 || line.axis >= p.dim()) throw std::out_of_range("line axis out of range");
}

// 1 / ((k+1)^j max(1,k)^(d-j))
Rational cube_peak(int d, std::int64_t k, int j) {
  BigInt den = 1;
  for (int i = 0; i < d; ++i) den *= BigInt(static_cast<long>(i < j ? k + 1 : std::max<std::int64_t>(1, k)));
  return Rational(BigInt(1), den);
}

}  // namespace

Rational line_contribution_cap_l1(const LatticePoint& p, const AxisLine& line) {
  check_line(p, line);
  std::int64_t dist = 0;
  for (int i = 0; i < p.dim(); ++i) {
    if (i != line.axis) dist += std::abs(line.base[i] - p[i]);
  }
  return Rational(BigInt(2), l1_ball_count(p.dim(), dist));
}

Rational line_contribution_cap_cube(const LatticePoint& p, const AxisLine& line) {
  check_line(p, line);
  std::int64_t k = 0;
  for (int i = 0; i < p.dim(); ++i) {
    if (i != line.axis) k = std::max(k, std::abs(line.base[i] - p[i]));
  }
  int j = 0;
  for (int i = 0; i < p.dim(); ++i) {
    if (i != line.axis && std::abs(line.base[i] - p[i]) == k) ++j;
  }
  Rational cap = 2 * cube_peak(p.dim(), k, j);
  cap.canonicalize();
  return cap;
}

// Along a line the delta's maximal function peaks at the foot point t = 0
// and is nonincreasing in |t|, so its variation over t in [-R, R] is
// 2 (v(0) - v(R)). Lines are grouped by the distance of their offset q.
Rational delta_variation_closed_form(const BallSpec& spec, std::int64_t R) {
  spec.validate();
  if (R < 0) throw std::invalid_argument("R must be >= 0");
  const int d = spec.dim;
  std::vector<Rational> terms;
  if (spec.centered()) {
    // offsets q in [-R, R]^(d-1) counted by |q|_1
    std::vector<BigInt> by_dist(1, BigInt(1));
    for (int axis = 1; axis < d; ++axis) {
      std::vector<BigInt> next(by_dist.size() + static_cast<std::size_t>(R), BigInt(0));
      for (std::size_t s = 0; s < by_dist.size(); ++s) {
        if (by_dist[s] == 0) continue;
        next[s] += by_dist[s];
        for (std::int64_t c = 1; c <= R; ++c) next[s + static_cast<std::size_t>(c)] += 2 * by_dist[s];
      }
      by_dist = std::move(next);
    }
    const auto k_max = static_cast<std::int64_t>(by_dist.size()) - 1 + R;
    ShellTable table(d, k_max);
    for (std::size_t k = 0; k < by_dist.size(); ++k) {
      if (by_dist[k] == 0) continue;
      const auto kk = static_cast<std::int64_t>(k);
      Rational line = 2 * (Rational(BigInt(1), table.count(kk)) - Rational(BigInt(1), table.count(kk + R)));
      terms.push_back(Rational(by_dist[k] * d) * line);
    }
  } else {
    // offsets q with |q|_inf = k and j coordinates at k:
    // C(d-1, j) 2^j (2k-1)^(d-1-j) of them for k >= 1, one for k = 0
    auto binom = [](int n, int r) {
      BigInt b;
      mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
      return b;
    };
    auto value = [&](std::int64_t m, int j) { return m == 0 ? Rational(1) : cube_peak(d, m, j); };
    for (std::int64_t k = 0; k <= R; ++k) {
      for (int j = 0; j <= d - 1; ++j) {
        BigInt count;
        if (k == 0) {
          if (j != d - 1) continue;
          count = 1;
        } else {
          if (j == 0) continue;
          count = binom(d - 1, j);
          count <<= static_cast<mp_bitcnt_t>(j);
          BigInt odd = 1;
          for (int i = 0; i < d - 1 - j; ++i) odd *= BigInt(static_cast<long>(2 * k - 1));
          count *= odd;
        }
        const int j_peak = k == 0 ? 0 : j;
        const Rational peak = value(k, j_peak);
        const Rational far = R > k ? value(R, 1) : value(k, j + 1);
        terms.push_back(Rational(count * d) * 2 * (peak - far));
      }
    }
  }
  Rational v = tree_sum(terms);
  v.canonicalize();
  return v;
}

std::vector<Rational> delta_line_variation_by_distance(const BallSpec& spec, std::int64_t K) {
  spec.validate();
  if (K < 0) throw std::invalid_argument("K must be >= 0");
  if (spec.geometry != Geometry::CenteredL1 && spec.geometry != Geometry::UncenteredCube) {
    throw std::invalid_argument("per-distance delta variation needs the l1 or cube geometry");
  }
  const int d = spec.dim;
  const GridFunction delta = GridFunction::delta(LatticePoint::zero(d));
  std::vector<std::vector<Rational>> per(static_cast<std::size_t>(K + 1));

  // offsets q of the fixed coordinates, all with |q| <= K in the relevant norm
  std::vector<std::int64_t> q(static_cast<std::size_t>(std::max(d - 1, 0)), -K);
  while (true) {
    std::int64_t dist = 0;
    for (auto c : q) dist = spec.centered() ? dist + std::abs(c) : std::max(dist, std::abs(c));
    if (dist <= K) {
      for (int axis = 0; axis < d; ++axis) {
        LatticePoint lo = LatticePoint::zero(d), hi = LatticePoint::zero(d);
        for (int i = 0, m = 0; i < d; ++i) {
          if (i == axis) continue;
          lo[i] = hi[i] = q[static_cast<std::size_t>(m++)];
        }
        // the window [-1, dist+1] contains the peak and the first steps of both tails
        lo[axis] = -1;
        hi[axis] = dist + 1;
        auto g = evaluate_on_box(delta, spec, Box{lo, hi});
        LineSequence seq;
        seq.first_index = -1;
        seq.values = std::move(g.values);
        seq.left = TailContract::to_limit(0);
        seq.right = TailContract::to_limit(0);
        per[static_cast<std::size_t>(dist)].push_back(string_decomposition(seq).variation);
      }
    }
    int i = static_cast<int>(q.size()) - 1;
    for (; i >= 0; --i) {
      if (++q[static_cast<std::size_t>(i)] <= K) break;
      q[static_cast<std::size_t>(i)] = -K;
    }
    if (i < 0) break;
  }
  std::vector<Rational> out;
  out.reserve(per.size());
  for (const auto& group : per) out.push_back(tree_sum(group));
  return out;
}

}  // namespace hlmax
