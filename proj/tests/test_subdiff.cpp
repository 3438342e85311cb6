#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "proxcvx/certify.hpp"
#include "proxcvx/subdiff.hpp"

using namespace proxcvx;

namespace {

std::vector<Point> grid(double lo, double hi, int n) {
  std::vector<Point> out;
  for (double x : oracle::linspace(lo, hi, n)) out.push_back({x});
  return out;
}

}  // namespace

TEST(InSubdiff, NegquadGutierrezAtOneAcceptsEverything) {
  const auto f = builtin("negquad");
  const auto ys = grid(0, 1, 257);
  for (double xi : {-100.0, -1.0, 0.0, 3.0, 1e6}) {
    const MembershipReport r = in_subdiff(SubdiffKind::kGutierrez, f, Box::line(0, 1), Point{1.0}, Point{xi}, ys);
    EXPECT_TRUE(r.member) << xi;
    EXPECT_EQ(r.samples_checked, 1u);
  }
}

TEST(InSubdiff, HalfsquareConvexExamples) {
  const auto f = builtin("halfsquare");
  const Box set = Box::line(-2, 2);
  const auto ys = grid(-2, 2, 401);
  EXPECT_TRUE(in_subdiff(SubdiffKind::kConvex, f, set, Point{0.0}, Point{0.0}, ys).member);
  EXPECT_TRUE(in_subdiff(SubdiffKind::kConvex, f, set, Point{1.0}, Point{1.0}, ys).member);
  const MembershipReport r = in_subdiff(SubdiffKind::kConvex, f, set, Point{1.0}, Point{3.0}, ys);
  EXPECT_FALSE(r.member);
  ASSERT_TRUE(r.violator.has_value());
  EXPECT_GT(r.worst_slack, -1e9);
  // h(2) - h(1) - 3 = -1.5 is the worst slack, at y = 2
  EXPECT_DOUBLE_EQ(r.worst_slack, -1.5);
}

TEST(InSubdiff, ViolatorActuallyViolates) {
  const auto f = builtin("logaffine");
  const auto ys = grid(1, 2, 257);
  const Point x{1.5};
  for (auto kind : {SubdiffKind::kConvex, SubdiffKind::kGutierrez, SubdiffKind::kPlastria}) {
    const MembershipReport r = in_subdiff(kind, f, Box::line(1, 2), x, Point{40.0}, ys);
    if (r.member) continue;
    const Point& y = *r.violator;
    EXPECT_LT(evaluate(f, y) - evaluate(f, x) - 40.0 * (y[0] - x[0]), -1e-9);
  }
}

TEST(InSubdiff, Errors) {
  const auto f = builtin("negquad");
  const auto ys = grid(0, 1, 5);
  EXPECT_THROW(in_subdiff(SubdiffKind::kConvex, f, Box::line(0, 1), Point{2.0}, Point{0.0}, ys), InvalidArgument);
  EXPECT_THROW(in_subdiff(SubdiffKind::kConvex, f, Box::line(0, 0.5), Point{0.75}, Point{0.0}, ys), InvalidArgument);
  EXPECT_THROW(subdiff_kind_from_string("clarke"), InvalidArgument);
}

TEST(InSubdiff, NestingOnRandomTriples) {
  std::mt19937_64 rng(17);
  for (const std::string name : {"negquad", "logaffine", "halfsquare", "abs", "staircase"}) {
    const auto f = builtin(name);
    const Box set = f.domain().bounded() ? f.domain() : Box::line(-3, 3);
    const auto ys = sample_points(f, set, GridSpec{129});
    std::uniform_real_distribution<double> dx(set[0].lo, set[0].hi), dxi(-5, 5);
    for (int i = 0; i < 200; ++i) {
      const Point x{dx(rng)}, xi{dxi(rng)};
      const bool convex = in_subdiff(SubdiffKind::kConvex, f, set, x, xi, ys).member;
      const bool gut = in_subdiff(SubdiffKind::kGutierrez, f, set, x, xi, ys).member;
      const bool pla = in_subdiff(SubdiffKind::kPlastria, f, set, x, xi, ys).member;
      if (convex) EXPECT_TRUE(gut) << name;
      if (gut) EXPECT_TRUE(pla) << name;
    }
  }
}

TEST(InSubdiff, GutierrezIgnoresSamplesAboveTheLevel) {
  const auto f = builtin("halfsquare");
  const Box set = Box::line(-10, 10);
  const Point x{1.0}, xi{0.7};
  const auto small = grid(-1, 1, 101);
  auto big = small;
  for (const auto& y : grid(-10, 10, 301)) {
    if (evaluate(f, y) > evaluate(f, x)) big.push_back(y);
  }
  const auto a = in_subdiff(SubdiffKind::kGutierrez, f, set, x, xi, small);
  const auto b = in_subdiff(SubdiffKind::kGutierrez, f, set, x, xi, big);
  EXPECT_EQ(a.member, b.member);
  EXPECT_EQ(a.samples_checked, b.samples_checked);
}

TEST(InSubdiff, PlastriaEqualsGutierrezForStronglyQuasiconvexLsc) {
  const auto f = builtin("negquad");
  const Box set = Box::line(0, 1);
  const auto ys = grid(0, 1, 257);
  for (double x : oracle::linspace(0, 1, 21)) {
    for (double xi : oracle::linspace(-6, 6, 25)) {
      EXPECT_EQ(in_subdiff(SubdiffKind::kGutierrez, f, set, Point{x}, Point{xi}, ys).member,
                in_subdiff(SubdiffKind::kPlastria, f, set, Point{x}, Point{xi}, ys).member)
          << x << " " << xi;
    }
  }
}

TEST(Charmin, NegquadAtOneAllTrue) {
  const auto r = charmin_check(builtin("negquad"), Box::line(0, 1), Point{1.0}, grid(0, 1, 257));
  EXPECT_TRUE(r.zero_in_plastria && r.zero_in_gutierrez && r.minimizes && r.probe_in_gutierrez);
  EXPECT_TRUE(r.agree);
}

TEST(Charmin, NegquadAtZeroAllFalse) {
  const auto r = charmin_check(builtin("negquad"), Box::line(0, 1), Point{0.0}, grid(0, 1, 257));
  EXPECT_FALSE(r.zero_in_plastria || r.zero_in_gutierrez || r.minimizes || r.probe_in_gutierrez);
  EXPECT_TRUE(r.agree);
}

TEST(Charmin, ConstantFunctionSplitsTheChain) {
  // every point minimizes and 0 is a Gutierrez subgradient, yet the sublevel set is all of K,
  // so no nonzero xi qualifies: the whole-space clause fails
  const FunctionSpec c{"constant", {Univariate({Piece{-5, 5, Closure::kClosed, PieceKind::kPoly, {2.0}}})}, {}};
  for (double x : {-5.0, 0.0, 3.0}) {
    const auto r = charmin_check(c, Box::line(-5, 5), Point{x}, grid(-5, 5, 101));
    EXPECT_TRUE(r.zero_in_plastria && r.zero_in_gutierrez && r.minimizes);
    EXPECT_FALSE(r.probe_in_gutierrez);
    EXPECT_FALSE(r.agree);
  }
}

TEST(StronglyG, NegquadPasses) {
  const auto f = builtin("negquad");
  const Box set = Box::line(0, 1);
  const auto r = strongly_G_check(f, set, default_zgrid(f, set), default_xgrid(f, set), default_triples(f, set));
  EXPECT_TRUE(r.membership);
  EXPECT_TRUE(r.strong_quasiconvex);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.z_checked, 33u);
  EXPECT_TRUE(check_alpha(f, set, 0.5, default_zgrid(f, set), default_xgrid(f, set)).pass);
}

TEST(StronglyG, CubicShiftedFailsTheStrongPart) {
  const auto f = builtin("cubic_shifted", {{"n", 3}});
  const Box set = Box::line(-3, 10);
  const auto zs = grid(-3, 0, 5);
  const auto r = strongly_G_check(f, set, zs, default_xgrid(f, set), default_triples(f, set));
  EXPECT_FALSE(r.strong_quasiconvex);
  EXPECT_FALSE(r.pass);
}

TEST(StronglyG, HalfsquareFailsMembership) {
  // z = 1: xbar = 1/2, xi = 1/4; y = 1/4 gives h(y) - h(xbar) - xi (y - xbar) = -1/32
  const auto f = builtin("halfsquare");
  const Box set = Box::line(-1, 1);
  const auto r = strongly_G_check(f, set, default_zgrid(f, set), default_xgrid(f, set), default_triples(f, set));
  EXPECT_TRUE(r.strong_quasiconvex);
  EXPECT_FALSE(r.membership);
  EXPECT_FALSE(r.pass);
  const auto m = in_subdiff(SubdiffKind::kGutierrez, f, set, Point{0.5}, Point{0.25}, grid(-1, 1, 9));
  EXPECT_FALSE(m.member);
  EXPECT_DOUBLE_EQ(m.worst_slack, -1.0 / 32.0);
}

TEST(StronglyG, Errors) {
  const auto f = builtin("quad2d");
  const Box set({Interval{0, 2}, Interval{-5, 5}});
  const std::vector<Point> zs{{-2.0, 0.0}};
  EXPECT_THROW(strongly_G_check(f, set, zs, zs, {}), SolverError);
  EXPECT_THROW(strongly_G_check(builtin("negquad"), Box::line(0, 1), grid(0, 1, 3), grid(0, 1, 3), {}, {}, 0.5),
               InvalidArgument);
}

TEST(Consequence, Examples) {
  const auto f = builtin("negquad");
  const Box set = Box::line(0, 1);
  const auto ys = grid(0, 1, 257);
  const auto r = strong_qcx_consequence(f, set, 1.0, 0.5, Point{1.0}, Point{-0.5}, ys);
  EXPECT_TRUE(r.holds);
  EXPECT_EQ(r.samples, 1u);
  EXPECT_DOUBLE_EQ(r.worst_slack, 0.0);
}

TEST(Consequence, HalfsquareWithSampledBeta) {
  // halfsquare is strongly quasiconvex with modulus 1 on a box; check the decay at x = 1 with xi = 1
  const auto f = builtin("halfsquare");
  const Box set = Box::line(-1, 1);
  const auto triples = default_triples(f, set);
  ASSERT_TRUE(quasiconvexity_probe(QcxKind::kStrong, f, set, triples, 1.0).consistent);
  const auto ys = grid(-1, 1, 257);
  ASSERT_TRUE(in_subdiff(SubdiffKind::kGutierrez, f, set, Point{1.0}, Point{1.0}, ys).member);
  EXPECT_TRUE(strong_qcx_consequence(f, set, 1.0, 1.0, Point{1.0}, Point{1.0}, ys).holds);
}
