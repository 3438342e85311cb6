#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "proxcvx/diagnostics.hpp"

using namespace proxcvx;

namespace {

const std::vector<std::string> kOneDim{"negquad", "staircase", "logaffine", "cubic_shifted", "negcubic",
                                       "abs",     "halfsquare", "indicator_spike"};

Box probe_set(const FunctionSpec& f) {
  if (f.id == "cubic_shifted(3)") return Box::line(-3, 10);
  return f.domain().bounded() ? f.domain() : Box::line(-5, 5);
}

}  // namespace

TEST(Qcx, NegquadStrongOne) {
  const auto f = builtin("negquad");
  const Box set = Box::line(0, 1);
  EXPECT_TRUE(quasiconvexity_probe(QcxKind::kStrong, f, set, default_triples(f, set), 1.0).consistent);
}

TEST(Qcx, CubicShiftedQuasiconvexButNotStrong) {
  const auto f = builtin("cubic_shifted", {{"n", 3}});
  const Box set = Box::line(-3, 10);
  const auto t = default_triples(f, set);
  EXPECT_TRUE(quasiconvexity_probe(QcxKind::kQuasiconvex, f, set, t).consistent);
  for (double beta : {0.1, 1.0}) {
    const ProbeReport r = quasiconvexity_probe(QcxKind::kStrong, f, set, t, beta);
    EXPECT_FALSE(r.consistent) << beta;
    ASSERT_TRUE(r.violator.has_value());
    EXPECT_GT(r.violator->lhs, r.violator->rhs);
  }
}

TEST(Qcx, EndpointLambdasAreEqualities) {
  const auto f = builtin("negcubic");
  const Box set = Box::line(-5, 5);
  std::vector<Triple> t;
  for (double x : {-4.0, 0.0, 2.5}) {
    for (double y : {-1.0, 3.0}) {
      t.push_back({{x}, {y}, 0.0});
      t.push_back({{x}, {y}, 1.0});
    }
  }
  for (auto kind : {QcxKind::kQuasiconvex, QcxKind::kSemistrict, QcxKind::kStrict, QcxKind::kStrong}) {
    EXPECT_TRUE(quasiconvexity_probe(kind, f, set, t, 1.0).consistent) << to_string(kind);
  }
}

TEST(Qcx, IndicatorSpikeOnlyFailsStrictAndQuasiconvex) {
  const auto f = builtin("indicator_spike");
  const Box set = Box::line(-1, 1);
  const auto t = default_triples(f, set);
  EXPECT_FALSE(quasiconvexity_probe(QcxKind::kStrict, f, set, t).consistent);
  EXPECT_FALSE(quasiconvexity_probe(QcxKind::kQuasiconvex, f, set, t).consistent);
  EXPECT_TRUE(quasiconvexity_probe(QcxKind::kSemistrict, f, set, t).consistent);
}

TEST(Qcx, EveryOtherBuiltinIsQuasiconvex) {
  for (const auto& name : kOneDim) {
    if (name == "indicator_spike") continue;
    const auto f = builtin(name);
    const Box set = probe_set(f);
    const auto t = default_triples(f, set);
    EXPECT_TRUE(quasiconvexity_probe(QcxKind::kQuasiconvex, f, set, t).consistent) << name;
    EXPECT_TRUE(quasiconvexity_probe(QcxKind::kSemistrict, f, set, t).consistent) << name;
  }
}

TEST(Qcx, Quad2dIsNotQuasiconvex) {
  // x2^2 - x1^2 - x1 on [0,2] x R: (0, sqrt 10) and (2, 4) share level 10, the midpoint sits above it
  const auto f = builtin("quad2d");
  const Box set({Interval{0, 2}, Interval{-kInf, kInf}});
  const std::vector<Triple> t{{{0.0, std::sqrt(10.0)}, {2.0, 4.0}, 0.5}};
  EXPECT_FALSE(quasiconvexity_probe(QcxKind::kQuasiconvex, f, set, t).consistent);
}

TEST(Qcx, LadderOnIdenticalTriples) {
  for (const auto& name : kOneDim) {
    const auto f = builtin(name);
    const Box set = probe_set(f);
    const auto t = default_triples(f, set);
    for (double beta : {0.1, 1.0, 4.0}) {
      const bool strong = quasiconvexity_probe(QcxKind::kStrong, f, set, t, beta).consistent;
      const bool semi = quasiconvexity_probe(QcxKind::kSemistrict, f, set, t).consistent;
      const bool qcx = quasiconvexity_probe(QcxKind::kQuasiconvex, f, set, t).consistent;
      if (strong) {
        EXPECT_TRUE(semi) << name;
        EXPECT_TRUE(qcx) << name;
      }
      // semistrict implies quasiconvex only for lsc functions
      if (semi && name != "indicator_spike" && name != "staircase") EXPECT_TRUE(qcx) << name;
    }
  }
}

TEST(Qcx, RandomTriplesAreSeeded) {
  const auto f = builtin("quad2d");
  const Box set({Interval{0, 2}, Interval{-kInf, kInf}});
  const auto a = random_triples(f, set, 50, 9);
  const auto b = random_triples(f, set, 50, 9);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].x, b[i].x);
    EXPECT_EQ(a[i].lambda, b[i].lambda);
    EXPECT_TRUE(set.contains(a[i].x));
  }
}

TEST(Qcx, StrongNeedsPositiveBeta) {
  const auto f = builtin("negquad");
  EXPECT_THROW(quasiconvexity_probe(QcxKind::kStrong, f, Box::line(0, 1), {}, 0.0), InvalidArgument);
}

TEST(Coercivity, Examples) {
  EXPECT_EQ(coercivity_probe(builtin("negcubic")).classification, "not-2-weakly-coercive");
  const FunctionSpec negabs{"negabs",
                            {Univariate({Piece{-kInf, 0, Closure::kLeftClosed, PieceKind::kPoly, {0, 1}},
                                         Piece{0, kInf, Closure::kClosed, PieceKind::kPoly, {0, -1}}})},
                            {}};
  const CoercivityReport n = coercivity_probe(negabs);
  EXPECT_EQ(n.classification, "2-weakly-coercive");
  EXPECT_FALSE(n.weakly_coercive);
  EXPECT_TRUE(n.heuristic);
  EXPECT_EQ(coercivity_probe(builtin("halfsquare")).classification, "supercoercive");
  EXPECT_EQ(coercivity_probe(builtin("abs")).classification, "coercive");
  EXPECT_EQ(coercivity_probe(builtin("negquad")).classification, "bounded-domain");
  EXPECT_EQ(coercivity_probe(builtin("quad2d")).classification, "bounded-domain");
}

TEST(Coercivity, LadderIsConsistent) {
  for (const auto& name : builtin_names()) {
    const auto r = coercivity_probe(builtin(name));
    if (r.supercoercive) EXPECT_TRUE(r.coercive) << name;
    if (r.coercive) EXPECT_TRUE(r.weakly_coercive) << name;
    if (r.weakly_coercive) EXPECT_TRUE(r.two_weakly_coercive) << name;
  }
}

TEST(Coercivity, Errors) {
  const std::array<double, 1> one{10.0};
  EXPECT_THROW(coercivity_probe(builtin("abs"), {}, one), InvalidArgument);
  const std::array<double, 2> decreasing{100.0, 10.0};
  EXPECT_THROW(coercivity_probe(builtin("abs"), {}, decreasing), InvalidArgument);
}

TEST(Identities, SelfTestPasses) {
  const ProbeReport r = identity_selftest();
  EXPECT_TRUE(r.consistent);
  EXPECT_EQ(r.samples, 2002u);
}
