#include "hlmax/maxop.hpp"
#include "hlmax/oracle.hpp"
#include "hlmax/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace hlmax;

namespace {

GridFunction pts1(std::vector<std::pair<std::int64_t, Rational>> xs) {
  std::vector<std::pair<LatticePoint, Rational>> e;
  for (auto& [x, v] : xs) e.emplace_back(LatticePoint{x}, v);
  return GridFunction(1, std::move(e));
}

const BallSpec kC1{Geometry::CenteredInterval, 1};
const BallSpec kU1{Geometry::UncenteredInterval, 1};

}  // namespace

TEST(Average, Examples) {
  auto d0 = GridFunction::delta(LatticePoint{0});
  EXPECT_EQ(average(d0, L1Ball{LatticePoint{0}, 2}), Rational(1, 5));
  EXPECT_EQ(average(GridFunction::delta(LatticePoint{0, 0}), L1Ball{LatticePoint{1, 0}, 1}), Rational(1, 5));
  EXPECT_EQ(average(GridFunction(2), Box::cube(2, 3)), 0);
  EXPECT_THROW(average(d0, L1Ball{LatticePoint{0}, -1}), std::invalid_argument);
  EXPECT_THROW(average(d0, Box{LatticePoint{1}, LatticePoint{0}}), std::invalid_argument);
}

TEST(CenteredMax1d, Examples) {
  auto d0 = GridFunction::delta(LatticePoint{0});
  auto w = centered_max_1d(d0, 3);
  EXPECT_EQ(w.value, oracle::brute_centered_1d(d0, 3, 10).value);
  EXPECT_EQ(w.value, Rational(1, 7));
  EXPECT_EQ(w.radius(), 3);
  auto w0 = centered_max_1d(d0, 0);
  EXPECT_EQ(w0.value, 1);
  EXPECT_EQ(w0.radius(), 0);
  auto two = pts1({{0, 1}, {6, 1}});
  auto w2 = centered_max_1d(two, 3);
  EXPECT_EQ(w2.value, oracle::brute_centered_1d(two, 3, 10).value);
  EXPECT_EQ(w2.value, Rational(2, 7));
  EXPECT_EQ(w2.radius(), 3);
  auto z = centered_max_1d(GridFunction(1), 4);
  EXPECT_EQ(z.value, 0);
  EXPECT_EQ(z.radius(), 0);
}

TEST(UncenteredMax1d, Examples) {
  auto d0 = GridFunction::delta(LatticePoint{0});
  auto w = uncentered_max_1d(d0, 3);
  EXPECT_EQ(w.value, oracle::brute_uncentered_cube(d0, LatticePoint{3}, 10).value);
  EXPECT_EQ(w.value, Rational(1, 4));
  EXPECT_EQ(w.box(), (Box{LatticePoint{0}, LatticePoint{3}}));
  EXPECT_EQ(uncentered_max_1d(d0, 0).value, 1);
  std::vector<std::pair<std::int64_t, Rational>> ind;
  for (std::int64_t x = 0; x <= 9; ++x) ind.emplace_back(x, 1);
  auto block = pts1(ind);
  auto wb = uncentered_max_1d(block, 20);
  EXPECT_EQ(wb.value, oracle::brute_uncentered_cube(block, LatticePoint{20}, 30).value);
  EXPECT_EQ(wb.value, Rational(10, 21));
  EXPECT_EQ(wb.box(), (Box{LatticePoint{0}, LatticePoint{20}}));
  EXPECT_EQ(uncentered_max_1d(GridFunction(1), 2).value, 0);
}

TEST(CenteredMaxL1, Examples) {
  for (int d = 1; d <= 3; ++d) {
    const auto p = LatticePoint::zero(d);
    auto delta = GridFunction::delta(p);
    LatticePoint n = p;
    n[0] = 2;
    n[d - 1] += 1;
    auto w = centered_max_l1(delta, n);
    EXPECT_EQ(w.value, oracle::brute_centered_l1(delta, n, 8).value);
    EXPECT_EQ(w.value, Rational(BigInt(1), l1_ball_count(d, n.l1_norm())));
    EXPECT_EQ(w.radius(), n.l1_norm());
  }
  EXPECT_EQ(centered_max_l1(GridFunction::delta(LatticePoint{0, 0}), LatticePoint{1, 1}).value, Rational(1, 13));
  EXPECT_EQ(centered_max_l1(GridFunction(2), LatticePoint{1, 1}).value, 0);
}

TEST(UncenteredMaxCube, Examples) {
  auto d2 = GridFunction::delta(LatticePoint{0, 0});
  auto w = uncentered_max_cube(d2, LatticePoint{2, 0});
  EXPECT_EQ(w.value, oracle::brute_uncentered_cube(d2, LatticePoint{2, 0}, 6).value);
  EXPECT_EQ(w.value, Rational(1, 6));
  EXPECT_EQ(w.count, BigInt(6));
  EXPECT_EQ(w.box(), (Box{LatticePoint{0, -1}, LatticePoint{2, 0}}));
  auto w0 = uncentered_max_cube(d2, LatticePoint{0, 0});
  EXPECT_EQ(w0.value, 1);
  EXPECT_EQ(w0.box(), (Box{LatticePoint{0, 0}, LatticePoint{0, 0}}));
  auto w1 = uncentered_max_cube(GridFunction::delta(LatticePoint{0}), LatticePoint{5});
  EXPECT_EQ(w1.value, Rational(1, 6));
  EXPECT_EQ(w1.box(), (Box{LatticePoint{0}, LatticePoint{5}}));
  EXPECT_EQ(uncentered_max_cube(GridFunction(2), LatticePoint{1, 1}).value, 0);
}

TEST(ClosedForms, Examples) {
  EXPECT_EQ(delta_centered_l1_closed_form(LatticePoint{0, 0, 0}, LatticePoint{0, 0, 0}), 1);
  EXPECT_EQ(delta_centered_l1_closed_form(LatticePoint{0, 0}, LatticePoint{1, 1}), Rational(1, 13));
  EXPECT_EQ(delta_centered_l1_closed_form(LatticePoint{0}, LatticePoint{7}), Rational(1, 15));
  EXPECT_EQ(delta_uncentered_cube_closed_form(LatticePoint{0, 0}, LatticePoint{0, 0}), 1);
  EXPECT_EQ(delta_uncentered_cube_closed_form(LatticePoint{0, 0}, LatticePoint{2, 0}), Rational(1, 6));
  EXPECT_EQ(delta_uncentered_cube_closed_form(LatticePoint{0, 0}, LatticePoint{1, 1}), Rational(1, 4));
  EXPECT_EQ(oracle::brute_uncentered_cube(GridFunction::delta(LatticePoint{0, 0}), LatticePoint{1, 1}, 3).value,
            Rational(1, 4));
}

TEST(ClosedForms, AgreeWithSearch) {
  for (int d = 1; d <= 3; ++d) {
    const auto p = LatticePoint::zero(d);
    const auto delta = GridFunction::delta(p);
    const std::int64_t r1 = d == 3 ? 10 : 30;
    for (const auto& n : l1_ball_points(d, r1)) {
      EXPECT_EQ(centered_max_l1(delta, n).value, delta_centered_l1_closed_form(p, n));
    }
    const std::int64_t r = d == 3 ? 6 : 12;
    auto grid = evaluate_on_box(delta, BallSpec{Geometry::UncenteredCube, d}, Box::cube(d, r));
    for (std::size_t i = 0; i < grid.values.size(); ++i) {
      EXPECT_EQ(grid.values[i], delta_uncentered_cube_closed_form(p, grid.point_at(i)));
    }
    auto cgrid = evaluate_on_box(delta, BallSpec{Geometry::CenteredL1, d}, Box::cube(d, r));
    for (std::size_t i = 0; i < cgrid.values.size(); ++i) {
      EXPECT_EQ(cgrid.values[i], delta_centered_l1_closed_form(p, cgrid.point_at(i)));
    }
  }
}

TEST(EvaluateOnBox, Examples) {
  auto d0 = GridFunction::delta(LatticePoint{0});
  auto g = evaluate_on_box(d0, kC1, Box{LatticePoint{-2}, LatticePoint{2}});
  EXPECT_EQ(g.values, (std::vector<Rational>{Rational(1, 5), Rational(1, 3), 1, Rational(1, 3), Rational(1, 5)}));
  auto z = evaluate_on_box(GridFunction(2), BallSpec{Geometry::UncenteredCube, 2}, Box::cube(2, 3));
  for (const auto& v : z.values) EXPECT_EQ(v, 0);
  auto c = evaluate_on_box(GridFunction::delta(LatticePoint{0, 0}), BallSpec{Geometry::UncenteredCube, 2},
                           Box::cube(2, 1));
  EXPECT_EQ(c.values, (std::vector<Rational>{Rational(1, 4), Rational(1, 2), Rational(1, 4), Rational(1, 2), 1,
                                             Rational(1, 2), Rational(1, 4), Rational(1, 2), Rational(1, 4)}));
  EXPECT_THROW(evaluate_on_box(d0, BallSpec{Geometry::CenteredInterval, 2}, Box::cube(2, 1)), DimensionMismatch);
  EXPECT_THROW(evaluate_on_box(d0, BallSpec{Geometry::CenteredL1, 2}, Box::cube(2, 1)), DimensionMismatch);
}

TEST(EvaluateOnBox, ParallelMatchesSerialReferenceAndBigIntPath) {
  const std::vector<BallSpec> specs{kC1, kU1, {Geometry::CenteredL1, 1}, {Geometry::UncenteredCube, 1},
                                    {Geometry::CenteredL1, 2}, {Geometry::UncenteredCube, 2},
                                    {Geometry::CenteredL1, 3}, {Geometry::UncenteredCube, 3}};
  for (std::size_t s = 0; s < specs.size(); ++s) {
    const auto& spec = specs[s];
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      auto f = random_gridfn(100 * s + seed, spec.dim, 4, 1 + seed % 4, 12);
      const Box box = Box::cube(spec.dim, spec.dim == 3 ? 4 : 8);
      auto fast = evaluate_on_box(f, spec, box);
      EXPECT_EQ(fast.values, evaluate_on_box_reference(f, spec, box).values);
      EXPECT_EQ(fast.values, evaluate_on_box(f, spec, box, {true, CubeStrategy::Auto}).values);
      if (spec.geometry == Geometry::UncenteredCube) {
        EXPECT_EQ(fast.values, evaluate_on_box(f, spec, box, {false, CubeStrategy::Subsets}).values);
        EXPECT_EQ(fast.values, evaluate_on_box(f, spec, box, {false, CubeStrategy::Hulls}).values);
      }
    }
  }
}

TEST(EvaluateOnBox, HugeValuesTakeTheBigIntPath) {
  GridFunction f(1, {{LatticePoint{0}, Rational(BigInt("1000000000000000000000"), BigInt(3))},
                     {LatticePoint{4}, Rational(1, 7)}});
  const Box box = Box::cube(1, 10);
  for (const auto& spec : {kC1, kU1}) {
    EXPECT_EQ(evaluate_on_box(f, spec, box).values, evaluate_on_box_reference(f, spec, box).values);
  }
}

TEST(MaxopProperties, DominationOrderingWitnessAndHomogeneity) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = 1 + trial % 2;
    auto f = random_gridfn(rng(), d, 5, 1 + trial % 5, 16);
    const Rational c(3, 7);
    auto g = f.scaled(c);
    std::vector<BallSpec> specs{{Geometry::CenteredL1, d}, {Geometry::UncenteredCube, d}};
    if (d == 1) {
      specs.push_back(kC1);
      specs.push_back(kU1);
    }
    for (int q = 0; q < 5; ++q) {
      std::vector<std::int64_t> x(static_cast<std::size_t>(d));
      for (auto& xi : x) xi = static_cast<std::int64_t>(rng() % 17) - 8;
      LatticePoint n(x);
      for (const auto& spec : specs) {
        auto w = maximal_function(f, spec, n);
        EXPECT_GE(w.value, abs(f.at(n)));
        EXPECT_EQ(average(f, w.set), w.value);
        if (const auto* ball = std::get_if<L1Ball>(&w.set)) {
          EXPECT_EQ(ball->center, n);
        } else {
          EXPECT_TRUE(w.box().contains(n));
          EXPECT_TRUE(is_admissible_cube_box(w.box()));
        }
        auto wg = maximal_function(g, spec, n);
        EXPECT_EQ(wg.value, c * w.value);
        EXPECT_EQ(wg.set, w.set);
      }
      // uncentered dominates centered (the centered cube is an admissible box)
      if (d == 1) {
        EXPECT_GE(uncentered_max_1d(f, n[0]).value, centered_max_1d(f, n[0]).value);
      }
      Rational centered_cube = 0;
      for (std::int64_t r = 0; r <= 16; ++r) centered_cube = std::max(centered_cube, average(f, Box::centered(n, r)));
      EXPECT_GE(uncentered_max_cube(f, n).value, centered_cube);
    }
  }
}

TEST(MaxopProperties, RadiusPruningIsSound) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_gridfn(rng(), 1, 6, 1 + trial % 4, 9);
    for (std::int64_t n = -9; n <= 9; n += 3) {
      std::int64_t reach = 0;
      for (const auto& [p, v] : f.support()) reach = std::max(reach, std::abs(p[0] - n));
      auto fast = centered_max_1d(f, n);
      auto wide = oracle::brute_centered_1d(f, n, 2 * reach + 5);
      EXPECT_EQ(fast.value, wide.value);
      EXPECT_EQ(fast.radius(), wide.radius());
    }
  }
}

TEST(MaxopProperties, GeometryNames) {
  for (auto g : {Geometry::CenteredInterval, Geometry::UncenteredInterval, Geometry::CenteredL1,
                 Geometry::UncenteredCube}) {
    EXPECT_EQ(parse_geometry(geometry_name(g)), g);
  }
  EXPECT_THROW(parse_geometry("ball"), std::invalid_argument);
}
