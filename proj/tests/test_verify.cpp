#include "hlmax/constants.hpp"
#include "hlmax/verify.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace hlmax;

namespace {

const BallSpec kC1{Geometry::CenteredInterval, 1};
const BallSpec kU1{Geometry::UncenteredInterval, 1};
const BallSpec kL2{Geometry::CenteredL1, 2};
const BallSpec kQ2{Geometry::UncenteredCube, 2};

}  // namespace

TEST(SupportText, Canonical) {
  GridFunction f(2, {{LatticePoint{1, 0}, Rational(1, 2)}, {LatticePoint{0, 0}, 1}});
  EXPECT_EQ(support_text(f), "(0,0):1 (1,0):1/2");
  EXPECT_EQ(support_text(GridFunction(1)), "");
}

TEST(VerifyInequality, DeltaRecord) {
  auto rec = verify_inequality(GridFunction::delta(LatticePoint{0}), kC1, Rational(1, 1000));
  EXPECT_TRUE(rec.is_delta);
  EXPECT_EQ(rec.l1, 1);
  EXPECT_EQ(rec.bound, 2);
  EXPECT_EQ(rec.gap, rec.bound - rec.ratio);
  EXPECT_GT(rec.gap, 0);
  EXPECT_LT(rec.gap, Rational(1, 100));
  EXPECT_EQ(rec.support, "(0):1");
  EXPECT_THROW(verify_inequality(GridFunction(1), kC1, Rational(1, 10)), std::invalid_argument);
}

TEST(VerifyInequality, ScalingAndTranslationInvariance) {
  GridFunction f(2, {{LatticePoint{0, 0}, 1}, {LatticePoint{2, 1}, Rational(2, 3)}});
  for (const auto& spec : {kL2, kQ2}) {
    auto base = verify_inequality(f, spec, Rational(1, 50), 64);
    auto scaled = verify_inequality(f.scaled(Rational(-7, 3)), spec, Rational(1, 50), 64);
    auto moved = verify_inequality(f.translated(LatticePoint{-11, 5}), spec, Rational(1, 50), 64);
    EXPECT_EQ(base.ratio, scaled.ratio);
    EXPECT_EQ(base.ratio, moved.ratio);
    EXPECT_EQ(base.radius, moved.radius);
    EXPECT_GT(base.gap, 0);
  }
}

TEST(RandomGridfn, DeterministicAndInRange) {
  auto a = random_gridfn(99, 2, 6, 5, 16);
  EXPECT_EQ(a, random_gridfn(99, 2, 6, 5, 16));
  EXPECT_NE(a, random_gridfn(100, 2, 6, 5, 16));
  EXPECT_EQ(a.support_size(), 5u);
  for (const auto& [p, v] : a.support()) {
    EXPECT_LE(p.linf_norm(), 6);
    EXPECT_GT(v, 0);
    EXPECT_LE(v, 16);
    EXPECT_LE(v.get_num(), 16);
    EXPECT_LE(v.get_den(), 16);
  }
}

TEST(UncenteredChain, RandomOneDimensional) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto f = random_gridfn(seed, 1, 20, 1 + seed % 6, 12);
    auto r = verify_uncentered_var_bound_1d(f);
    ASSERT_TRUE(r.holds()) << support_text(f);
    EXPECT_EQ(r.var_f, total_variation(f));
    EXPECT_EQ(r.two_l1, 2 * l1_norm(f));
  }
  EXPECT_THROW(verify_uncentered_var_bound_1d(GridFunction::delta(LatticePoint{0, 0})), std::invalid_argument);
}

TEST(TwoPointOffsets, OrbitRepresentatives) {
  auto v1 = two_point_offsets(1, 5);
  EXPECT_EQ(v1.size(), 5u);
  auto v2 = two_point_offsets(2, 5);
  EXPECT_EQ(v2.size(), 11u);
  std::set<LatticePoint> seen(v2.begin(), v2.end());
  EXPECT_EQ(seen.size(), v2.size());
  for (const auto& v : v2) {
    EXPECT_GE(v[0], v[1]);
    EXPECT_GE(v[1], 0);
    EXPECT_GE(v.l1_norm(), 1);
    EXPECT_LE(v.l1_norm(), 5);
  }
  EXPECT_EQ(TwoPointFamily::default_ratios().size(), 9u);
}

TEST(ScanExtremizers, DeltaOnTopInOneDimension) {
  TwoPointFamily fam;
  fam.max_distance = 3;
  fam.ratios = TwoPointFamily::default_ratios();
  auto s = scan_extremizers(kC1, fam, 300);
  EXPECT_EQ(s.records.size(), 3 * fam.ratios.size() + 1);
  EXPECT_TRUE(s.no_negative_gap);
  EXPECT_TRUE(s.all_non_delta_positive);
  EXPECT_TRUE(s.deltas_on_top);
  EXPECT_TRUE(s.records.front().is_delta);
  for (std::size_t i = 1; i < s.records.size(); ++i) EXPECT_GE(s.records[i].gap, s.records[i - 1].gap);
  EXPECT_GT(s.margin, 0);
}

TEST(ScanExtremizers, DeltaGapShrinksWithR) {
  TwoPointFamily fam;
  fam.max_distance = 1;
  fam.ratios = {1};
  for (const auto& spec : {kU1, kQ2}) {
    Rational prev = 100;
    for (std::int64_t R : {10, 20, 40}) {
      auto s = scan_extremizers(spec, fam, R);
      auto it = std::find_if(s.records.begin(), s.records.end(), [](const auto& r) { return r.is_delta; });
      ASSERT_NE(it, s.records.end());
      EXPECT_LT(it->gap, prev);
      prev = it->gap;
    }
  }
}

TEST(OracleEquivalence, SmallBatches) {
  for (const auto& spec : {kC1, kU1, kL2, kQ2}) {
    auto r = oracle_equivalence(spec, 3, 5);
    EXPECT_EQ(r.instances, 5u);
    EXPECT_GT(r.points, 0u);
    EXPECT_TRUE(r.all_agree()) << (r.disagreements.empty() ? "" : r.disagreements.front());
  }
}

TEST(Suites, LemmasPassAndUnknownThrows) {
  auto r = run_suite("lemmas", 7);
  EXPECT_TRUE(r.passed());
  EXPECT_FALSE(r.checks.empty());
  EXPECT_TRUE(r.violations.empty());
  EXPECT_THROW(run_suite("nope", 7), std::invalid_argument);
}
