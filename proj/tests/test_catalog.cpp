#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "proxcvx/catalog.hpp"

using namespace proxcvx;

namespace {

double eval1(const FunctionSpec& f, double x) { return evaluate(f, Point{x}); }

}  // namespace

TEST(Evaluate, NegquadAtOne) { EXPECT_DOUBLE_EQ(eval1(builtin("negquad"), 1.0), -2.0); }

TEST(Evaluate, StaircaseAtOne) { EXPECT_DOUBLE_EQ(eval1(builtin("staircase", {{"n", 3}}), 1.0), 0.0); }

TEST(Evaluate, OutsideDomainIsInfinite) {
  EXPECT_EQ(eval1(builtin("negquad"), 1.5), kInf);
  EXPECT_EQ(eval1(builtin("negquad"), -1e-12), kInf);
  EXPECT_EQ(eval1(builtin("logaffine"), 0.5), kInf);
  EXPECT_EQ(eval1(builtin("cubic_shifted", {{"n", 3}}), -3.5), kInf);
  EXPECT_EQ(evaluate(builtin("quad2d"), Point{2.5, 0.0}), kInf);
}

TEST(Builtin, LogaffineAtOne) { EXPECT_DOUBLE_EQ(eval1(builtin("logaffine"), 1.0), 5.0 + std::log(11.0)); }

TEST(Builtin, HalfsquareAtZero) { EXPECT_DOUBLE_EQ(eval1(builtin("halfsquare"), 0.0), 0.0); }

TEST(Builtin, StaircaseFourAtThreeAndAHalf) {
  EXPECT_DOUBLE_EQ(eval1(builtin("staircase", {{"n", 4}}), 3.5), -44.875);
}

TEST(Builtin, MatchesIndependentFormulas) {
  const auto nq = builtin("negquad");
  const auto la = builtin("logaffine");
  const auto st = builtin("staircase", {{"n", 5}});
  const auto cs = builtin("cubic_shifted", {{"n", 2}});
  for (double x : oracle::linspace(-3.0, 6.0, 9001)) {
    if (std::isfinite(oracle::negquad(x))) EXPECT_DOUBLE_EQ(eval1(nq, x), oracle::negquad(x)) << x;
    else EXPECT_EQ(eval1(nq, x), kInf) << x;
    if (std::isfinite(oracle::logaffine(x))) EXPECT_NEAR(eval1(la, x), oracle::logaffine(x), 1e-12) << x;
    else EXPECT_EQ(eval1(la, x), kInf) << x;
    EXPECT_EQ(eval1(st, x), oracle::staircase(5)(x)) << x;
    EXPECT_EQ(eval1(cs, x), oracle::cubic_shifted(2)(x)) << x;
    EXPECT_EQ(eval1(builtin("abs"), x), std::abs(x));
    EXPECT_EQ(eval1(builtin("negcubic"), x), -x * x * x);
  }
}

TEST(Builtin, IndicatorSpike) {
  const auto f = builtin("indicator_spike");
  EXPECT_EQ(eval1(f, 0.0), 1.0);
  EXPECT_EQ(eval1(f, 1e-300), 0.0);
  EXPECT_EQ(eval1(f, -0.5), 0.0);
  ASSERT_EQ(f.terms[0].breakpoints().size(), 1u);
  EXPECT_EQ(f.terms[0].breakpoints()[0].continuity, Continuity::kNotLsc);
}

TEST(Builtin, StaircaseBreakpointsAreNotLsc) {
  const auto f = builtin("staircase", {{"n", 4}});
  const auto& bps = f.terms[0].breakpoints();
  ASSERT_EQ(bps.size(), 2u);
  EXPECT_EQ(bps[0].x, 2.0);
  EXPECT_EQ(bps[1].x, 3.0);
  // h(2) = -7 exceeds the right limit -9, so not lsc
  EXPECT_DOUBLE_EQ(bps[0].value, -7.0);
  EXPECT_DOUBLE_EQ(bps[0].right_limit, -9.0);
  EXPECT_EQ(bps[0].continuity, Continuity::kNotLsc);
}

TEST(Builtin, AbsBreakpointIsContinuous) {
  const auto& bps = builtin("abs").terms[0].breakpoints();
  ASSERT_EQ(bps.size(), 1u);
  EXPECT_EQ(bps[0].continuity, Continuity::kContinuous);
}

TEST(Builtin, RejectsBadInput) {
  EXPECT_THROW(builtin("nope"), InvalidArgument);
  EXPECT_THROW(builtin("staircase", {{"n", 2}}), InvalidArgument);
  EXPECT_THROW(builtin("staircase", {{"n", 3.5}}), InvalidArgument);
  EXPECT_THROW(builtin("cubic_shifted", {{"n", 0}}), InvalidArgument);
  EXPECT_THROW(builtin("negquad", {{"n", 3}}), InvalidArgument);
}

TEST(Builtin, NamesAllConstruct) {
  for (const auto& name : builtin_names()) EXPECT_NO_THROW(builtin(name)) << name;
}

TEST(Univariate, RejectsGapsAndOverlaps) {
  EXPECT_THROW(Univariate({Piece{0, 1, Closure::kClosed, PieceKind::kPoly, {0}},
                           Piece{1.5, 2, Closure::kClosed, PieceKind::kPoly, {0}}}),
               InvalidArgument);
  // boundary owned twice
  EXPECT_THROW(Univariate({Piece{0, 1, Closure::kClosed, PieceKind::kPoly, {0}},
                           Piece{1, 2, Closure::kClosed, PieceKind::kPoly, {0}}}),
               InvalidArgument);
  // boundary owned by nobody
  EXPECT_THROW(Univariate({Piece{0, 1, Closure::kLeftClosed, PieceKind::kPoly, {0}},
                           Piece{1, 2, Closure::kRightClosed, PieceKind::kPoly, {0}}}),
               InvalidArgument);
  // open finite end of the domain
  EXPECT_THROW(Univariate({Piece{0, 1, Closure::kRightClosed, PieceKind::kPoly, {0}}}), InvalidArgument);
  EXPECT_THROW(Univariate({}), InvalidArgument);
}

TEST(Univariate, ExactlyOnePieceClaimsEachSample) {
  for (const std::string name : {"staircase", "abs", "negquad", "logaffine"}) {
    const auto f = builtin(name);
    const auto& u = f.terms[0];
    const Interval w = sampling_window(u.domain(), 50.0);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(w.lo, w.hi);
    std::vector<double> xs;
    for (int i = 0; i < 10000; ++i) xs.push_back(d(rng));
    for (const auto& p : u.pieces()) xs.push_back(p.lo), xs.push_back(p.hi);
    for (double x : xs) {
      if (!std::isfinite(x) || !u.domain().contains(x)) continue;
      int owners = 0;
      for (const auto& p : u.pieces()) owners += p.contains(x) ? 1 : 0;
      EXPECT_EQ(owners, 1) << name << " at " << x;
    }
  }
}

TEST(Univariate, BreakpointsStrictlyIncreasingInsideDomain) {
  for (const auto& name : builtin_names()) {
    const auto f = builtin(name);
    for (const auto& u : f.terms) {
      const auto& b = u.breakpoints();
      for (std::size_t i = 0; i < b.size(); ++i) {
        EXPECT_TRUE(u.domain().contains(b[i].x)) << name;
        if (i) EXPECT_LT(b[i - 1].x, b[i].x) << name;
      }
    }
  }
}

TEST(Separable, TwoDimensionalEqualsSumOfTerms) {
  const auto f = builtin("quad2d");
  ASSERT_EQ(f.dimension(), 2u);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> d1(0.0, 2.0), d2(-50.0, 50.0);
  for (int i = 0; i < 10000; ++i) {
    const double a = d1(rng), b = d2(rng);
    EXPECT_DOUBLE_EQ(evaluate(f, Point{a, b}), f.terms[0](a) + f.terms[1](b));
    EXPECT_NEAR(evaluate(f, Point{a, b}), b * b - a * a - a, 1e-9 * (1 + b * b));
  }
}

TEST(Scaled, MultipliesValues) {
  const auto f = builtin("logaffine");
  const auto g = scaled(f, 0.1);
  for (double x : oracle::linspace(1.0, 2.0, 101)) EXPECT_NEAR(eval1(g, x), 0.1 * eval1(f, x), 1e-12);
  const auto s = scaled(builtin("indicator_spike"), 3.0);
  EXPECT_EQ(eval1(s, 0.0), 3.0);
  EXPECT_THROW(scaled(f, 0.0), InvalidArgument);
}

TEST(Grid, SamplingWindow) {
  EXPECT_EQ(sampling_window({0, 1}, 16), (Interval{0, 1}));
  EXPECT_EQ(sampling_window({-3, kInf}, 16), (Interval{-3, 29}));
  EXPECT_EQ(sampling_window({-kInf, 2}, 16), (Interval{-30, 2}));
  EXPECT_EQ(sampling_window({-kInf, kInf}, 16), (Interval{-16, 16}));
}

TEST(Grid, BreakpointsInjected) {
  const auto f = builtin("abs");
  GridSpec g;
  g.points_per_coordinate = 4;  // -1, -1/3, 1/3, 1 without the breakpoint
  const auto xs = axis_samples(f.terms[0], {-1, 1}, g);
  EXPECT_NE(std::find(xs.begin(), xs.end(), 0.0), xs.end());
  EXPECT_TRUE(std::is_sorted(xs.begin(), xs.end()));
  g.include_breakpoints = false;
  const auto ys = axis_samples(f.terms[0], {-1, 1}, g);
  EXPECT_EQ(std::find(ys.begin(), ys.end(), 0.0), ys.end());
}

TEST(Grid, Validation) {
  GridSpec g;
  g.points_per_coordinate = 2;
  EXPECT_THROW(g.validate(), InvalidArgument);
  g = {};
  g.window_radius = 0;
  EXPECT_THROW(g.validate(), InvalidArgument);
}

TEST(Box, Validation) {
  EXPECT_THROW(Box(std::vector<Interval>{}), InvalidArgument);
  EXPECT_THROW(Box({Interval{1, 0}}), InvalidArgument);
  EXPECT_THROW(Box({Interval{0, 1}, Interval{0, 1}, Interval{0, 1}}), InvalidArgument);
  const Box b({Interval{0, 2}, Interval{-kInf, kInf}});
  EXPECT_TRUE(b.contains(Point{1, 1e300}));
  EXPECT_FALSE(b.contains(Point{3, 0}));
  EXPECT_FALSE(b.bounded());
  EXPECT_TRUE(Box::line(0, 1).intersect(Box::line(2, 3)).empty());
}
