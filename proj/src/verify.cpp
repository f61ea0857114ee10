#include "hlmax/verify.hpp"

#include "hlmax/constants.hpp"
#include "hlmax/lattice.hpp"
#include "hlmax/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hlmax {

namespace {

Rational cached_bound(const BallSpec& spec, std::int64_t K) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, std::int64_t>, Rational> cache;
  const auto key = std::make_tuple(static_cast<int>(spec.geometry), spec.dim, K);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Rational b = sharp_constant_upper(spec, K);
  std::lock_guard lock(mu);
  cache.emplace(key, b);
  return b;
}

SharpnessRecord make_record(const GridFunction& f, const BallSpec& spec, const Rational& var, const Rational& bound) {
  SharpnessRecord r;
  r.spec = spec;
  r.support = support_text(f);
  r.support_size = f.support_size();
  r.l1 = l1_norm(f);
  r.ratio = var / r.l1;
  r.ratio.canonicalize();
  r.bound = bound;
  r.gap = bound - r.ratio;
  r.gap.canonicalize();
  r.is_delta = r.support_size == 1;
  return r;
}

}  // namespace

std::string support_text(const GridFunction& f) {
  std::string out;
  for (const auto& [p, v] : f.support()) {
    if (!out.empty()) out += ' ';
    out += p.to_string() + ":" + to_string(v);
  }
  return out;
}

SharpnessRecord verify_inequality(const GridFunction& f, const BallSpec& spec, const Rational& epsilon,
                                  std::int64_t r_max, std::int64_t constant_terms) {
  if (f.is_zero()) throw std::invalid_argument("verify_inequality: zero function");
  auto rep = adaptive_variation(f, spec, epsilon, r_max, constant_terms);
  auto rec = make_record(f, spec, rep.truncated_var, cached_bound(spec, constant_terms));
  rec.radius = rep.trace.back().first;
  rec.stop = rep.stop;
  rec.trace = std::move(rep.trace);
  return rec;
}

UncenteredChainReport verify_uncentered_var_bound_1d(const GridFunction& f, const Rational& epsilon,
                                                     std::int64_t r_max) {
  if (f.dim() != 1) throw DimensionMismatch("the uncentered chain check is one-dimensional");
  if (f.is_zero()) throw std::invalid_argument("verify_uncentered_var_bound_1d: zero function");
  UncenteredChainReport r;
  auto rep = adaptive_variation(f, BallSpec{Geometry::UncenteredInterval, 1}, epsilon, r_max);
  r.var_maxfn = rep.truncated_var;
  r.radius = rep.trace.back().first;
  r.var_f = total_variation(f);
  r.two_l1 = 2 * l1_norm(f);
  r.two_l1.canonicalize();
  r.maxfn_below_var = r.var_maxfn <= r.var_f;
  r.var_below_two_l1 = r.var_f <= r.two_l1;
  return r;
}

GridFunction random_gridfn(std::uint64_t seed, int d, std::int64_t support_radius, std::size_t support_count,
                           std::int64_t value_bound) {
  if (d < 1 || support_radius < 0 || support_count < 1 || value_bound < 1) {
    throw std::invalid_argument("random_gridfn: parameters must be positive");
  }
  BigInt cells = 1;
  for (int i = 0; i < d; ++i) cells *= BigInt(static_cast<long>(2 * support_radius + 1));
  if (BigInt(static_cast<unsigned long>(support_count)) > cells) {
    throw std::invalid_argument("random_gridfn: more support points than box cells");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> coord(-support_radius, support_radius);
  std::uniform_int_distribution<std::int64_t> val(1, value_bound);
  std::set<LatticePoint> seen;
  std::vector<std::pair<LatticePoint, Rational>> entries;
  while (entries.size() < support_count) {
    std::vector<std::int64_t> c(static_cast<std::size_t>(d));
    for (auto& x : c) x = coord(rng);
    LatticePoint p(std::move(c));
    if (!seen.insert(p).second) continue;
    const std::int64_t num = val(rng);
    const std::int64_t den = val(rng);
    Rational v(BigInt(static_cast<long>(num)), BigInt(static_cast<long>(den)));
    v.canonicalize();
    entries.emplace_back(std::move(p), v);
  }
  return GridFunction(d, std::move(entries));
}

std::vector<Rational> TwoPointFamily::default_ratios() {
  return {Rational(1, 5), Rational(1, 4), Rational(1, 3), Rational(1, 2), Rational(1),
          Rational(2),    Rational(3),    Rational(4),    Rational(5)};
}

std::vector<LatticePoint> two_point_offsets(int d, std::int64_t max_distance) {
  // nonincreasing nonnegative coordinates represent each orbit once
  std::vector<LatticePoint> out;
  std::vector<std::int64_t> v(static_cast<std::size_t>(d), 0);
  std::function<void(int, std::int64_t, std::int64_t)> rec = [&](int i, std::int64_t cap, std::int64_t budget) {
    if (i == d) {
      std::int64_t n = 0;
      for (auto c : v) n += c;
      if (n >= 1) out.emplace_back(v);
      return;
    }
    for (std::int64_t c = 0; c <= std::min(cap, budget); ++c) {
      v[static_cast<std::size_t>(i)] = c;
      rec(i + 1, c, budget - c);
    }
    v[static_cast<std::size_t>(i)] = 0;
  };
  rec(0, max_distance, max_distance);
  std::sort(out.begin(), out.end(), [](const LatticePoint& a, const LatticePoint& b) {
    return a.l1_norm() != b.l1_norm() ? a.l1_norm() < b.l1_norm() : a < b;
  });
  return out;
}

ScanResult scan_extremizers(const BallSpec& spec, const TwoPointFamily& family, std::int64_t R,
                            std::int64_t constant_terms) {
  spec.validate();
  const Rational bound = cached_bound(spec, constant_terms);
  ScanResult res;
  auto measure = [&](const GridFunction& f) {
    const Rational var = truncated_variation_maxfn(f, spec, R);
    auto rec = make_record(f, spec, var, bound);
    rec.radius = R;
    res.records.push_back(std::move(rec));
  };
  const LatticePoint origin = LatticePoint::zero(spec.dim);
  if (family.include_delta) measure(GridFunction::delta(origin));
  for (const auto& v : two_point_offsets(spec.dim, family.max_distance)) {
    for (const auto& rho : family.ratios) {
      measure(GridFunction(spec.dim, {{origin, Rational(1)}, {v, rho}}));
    }
  }
  std::stable_sort(res.records.begin(), res.records.end(), [](const SharpnessRecord& a, const SharpnessRecord& b) {
    return a.gap != b.gap ? a.gap < b.gap : a.support < b.support;
  });
  bool have_margin = false;
  Rational worst_delta = 0;
  bool have_delta = false;
  for (const auto& r : res.records) {
    if (r.gap < 0) res.no_negative_gap = false;
    if (r.is_delta) {
      if (!have_delta || r.gap > worst_delta) worst_delta = r.gap;
      have_delta = true;
      continue;
    }
    if (r.gap <= 0) res.all_non_delta_positive = false;
    if (!have_margin || r.gap < res.margin) res.margin = r.gap;
    have_margin = true;
  }
  res.deltas_on_top = !have_delta || !have_margin || worst_delta < res.margin;
  return res;
}

namespace {

bool same_set(const AveragingSet& a, const AveragingSet& b) { return a == b; }

std::string describe(const AveragingSet& s) {
  if (const auto* ball = std::get_if<L1Ball>(&s)) {
    return "ball(" + ball->center.to_string() + ", r=" + std::to_string(ball->radius) + ")";
  }
  return std::get<Box>(s).to_string();
}

}  // namespace

OracleAgreement oracle_equivalence(const BallSpec& spec, std::uint64_t seed, std::size_t instances) {
  spec.validate();
  OracleAgreement out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> size_dist(1, 5);
  std::uniform_int_distribution<std::int64_t> query(-8, 8);
  const int d = spec.dim;
  constexpr int kQueriesPerInstance = 4;
  for (std::size_t inst = 0; inst < instances; ++inst) {
    const GridFunction f = random_gridfn(rng(), d, 6, size_dist(rng), 16);
    ++out.instances;
    for (int qi = 0; qi < kQueriesPerInstance; ++qi) {
      std::vector<std::int64_t> c(static_cast<std::size_t>(d));
      for (auto& x : c) x = query(rng);
      const LatticePoint n(std::move(c));
      const ArgmaxWitness fast = maximal_function(f, spec, n);
      ArgmaxWitness ref;
      // the documented bounds: largest support distance / largest hull extent
      std::int64_t reach = 0, span = 1;
      for (int i = 0; i < d; ++i) {
        std::int64_t lo = n[i], hi = n[i];
        for (const auto& [p, v] : f.support()) {
          lo = std::min(lo, p[i]);
          hi = std::max(hi, p[i]);
        }
        span = std::max(span, hi - lo + 1);
      }
      for (const auto& [p, v] : f.support()) reach = std::max(reach, l1_distance(p, n));
      switch (spec.geometry) {
        case Geometry::CenteredInterval: ref = oracle::brute_centered_1d(f, n[0], reach); break;
        case Geometry::CenteredL1: ref = oracle::brute_centered_l1(f, n, reach); break;
        case Geometry::UncenteredInterval:
        case Geometry::UncenteredCube: ref = oracle::brute_uncentered_cube(f, n, span); break;
      }
      ++out.points;
      const bool value_ok = fast.value == ref.value;
      const bool witness_ok = same_set(fast.set, ref.set) && fast.count == ref.count;
      out.value_agreements += value_ok ? 1 : 0;
      out.witness_agreements += witness_ok ? 1 : 0;
      if (!value_ok || !witness_ok) {
        out.disagreements.push_back(std::string(geometry_name(spec.geometry)) + " f={" + support_text(f) + "} n=" +
                                    n.to_string() + " fast=" + to_string(fast.value) + " " + describe(fast.set) +
                                    " oracle=" + to_string(ref.value) + " " + describe(ref.set));
      }
    }
  }
  return out;
}

bool SuiteResult::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.passed; });
}

namespace {

void lemma_suite(SuiteResult& res) {
  for (int d = 1; d <= 6; ++d) {
    auto v = check_log_concavity(d, 2000);
    res.checks.push_back({"log-concavity d=" + std::to_string(d) + " k<=2000", v.empty(),
                          std::to_string(v.size()) + " violations"});
    for (const auto& x : v) {
      res.violations.push_back("log-concavity d=" + std::to_string(d) + " k=" + std::to_string(x.k) +
                               " lhs=" + to_string(x.lhs) + " rhs=" + to_string(x.rhs));
    }
  }
  for (int d = 1; d <= 4; ++d) {
    auto v = check_gap_monotonicity(d, 500);
    res.checks.push_back({"gap monotonicity d=" + std::to_string(d) + " k<=500", v.empty(),
                          std::to_string(v.size()) + " violations"});
    for (const auto& x : v) {
      res.violations.push_back("gap monotonicity d=" + std::to_string(d) + " k=" + std::to_string(x.k) +
                               " lhs=" + to_string(x.lhs) + " rhs=" + to_string(x.rhs));
    }
  }
  std::size_t mismatches = 0;
  for (int d = 1; d <= 4; ++d) {
    ShellTable t(d, 12);
    for (std::int64_t k = 0; k <= 12; ++k) {
      const auto pts = l1_ball_points(d, k);
      if (BigInt(static_cast<unsigned long>(pts.size())) != t.count(k)) {
        ++mismatches;
        res.violations.push_back("count d=" + std::to_string(d) + " k=" + std::to_string(k));
      }
    }
  }
  res.checks.push_back({"recurrence vs enumeration d<=4 k<=12", mismatches == 0,
                        std::to_string(mismatches) + " mismatches"});
}

void sharpness_suite(SuiteResult& res) {
  const std::vector<BallSpec> specs{{Geometry::CenteredInterval, 1},
                                    {Geometry::UncenteredInterval, 1},
                                    {Geometry::CenteredL1, 2},
                                    {Geometry::UncenteredCube, 2}};
  for (const auto& spec : specs) {
    const std::string g(geometry_name(spec.geometry));
    auto rec = verify_inequality(GridFunction::delta(LatticePoint::zero(spec.dim)), spec, Rational(1, 100), 256);
    res.checks.push_back({"delta " + g + " d=" + std::to_string(spec.dim), rec.gap >= 0,
                          "ratio " + to_decimal(rec.ratio, 6) + " bound " + to_decimal(rec.bound, 6)});
    if (rec.gap < 0) res.violations.push_back("delta " + g + " gap=" + to_string(rec.gap));

    TwoPointFamily fam;
    fam.max_distance = 3;
    fam.ratios = TwoPointFamily::default_ratios();
    auto scan = scan_extremizers(spec, fam, spec.dim == 1 ? 400 : 60);
    const bool ok = scan.no_negative_gap && scan.all_non_delta_positive;
    res.checks.push_back({"two-point scan " + g, ok,
                          std::to_string(scan.records.size()) + " records, margin " + to_decimal(scan.margin, 6)});
    for (const auto& r : scan.records) {
      if (r.gap < 0 || (!r.is_delta && r.gap <= 0)) {
        res.violations.push_back(g + " f={" + r.support + "} gap=" + to_string(r.gap));
      }
    }
  }
}

void oracle_suite(SuiteResult& res, std::uint64_t seed) {
  const std::vector<BallSpec> specs{{Geometry::CenteredInterval, 1},
                                    {Geometry::UncenteredInterval, 1},
                                    {Geometry::CenteredL1, 2},
                                    {Geometry::UncenteredCube, 2}};
  for (std::size_t i = 0; i < specs.size(); ++i) {
    auto agree = oracle_equivalence(specs[i], seed + i, 100);
    res.checks.push_back({"oracle " + std::string(geometry_name(specs[i].geometry)), agree.all_agree(),
                          std::to_string(agree.instances) + "/" + std::to_string(agree.instances) + " instances, " +
                              std::to_string(agree.value_agreements) + "/" + std::to_string(agree.points) +
                              " exact agreements"});
    for (auto& s : agree.disagreements) res.violations.push_back(std::move(s));
  }
}

}  // namespace

SuiteResult run_suite(std::string_view name, std::uint64_t seed) {
  SuiteResult res;
  res.suite = std::string(name);
  if (name == "lemmas") {
    lemma_suite(res);
  } else if (name == "sharpness") {
    sharpness_suite(res);
  } else if (name == "oracle") {
    oracle_suite(res, seed);
  } else {
    throw std::invalid_argument("unknown suite '" + std::string(name) + "'");
  }
  return res;
}

}  // namespace hlmax
