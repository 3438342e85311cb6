#include <gtest/gtest.h>

#include "proxcvx/io.hpp"

using namespace proxcvx;

TEST(FunctionJson, RoundTripsEveryBuiltin) {
  for (const auto& name : builtin_names()) {
    const auto f = builtin(name);
    const Json j = to_json(f);
    const FunctionSpec back = function_from_json(Json::parse(j.dump()));
    EXPECT_EQ(back, f) << name;
    EXPECT_EQ(to_json(back).dump(), j.dump()) << name;
  }
}

TEST(FunctionJson, Schema) {
  const Json j = to_json(builtin("cubic_shifted", {{"n", 3}}));
  EXPECT_EQ(j["id"], "cubic_shifted(3)");
  EXPECT_EQ(j["dimension"], 1);
  EXPECT_EQ(j["domain"]["lo"], -3.0);
  EXPECT_EQ(j["domain"]["hi"], "+inf");
  EXPECT_EQ(j["pieces"][0]["closure"], "left_closed");
  EXPECT_EQ(j["pieces"][0]["kind"], "poly");
  const Json q = to_json(builtin("quad2d"));
  EXPECT_EQ(q["dimension"], 2);
  EXPECT_EQ(q["terms"].size(), 2u);
  EXPECT_EQ(q["closed_form"], "quadratic");
}

TEST(FunctionJson, InlineSpec) {
  const auto j = Json::parse(R"({"id":"ramp","pieces":[
      {"lo":"-inf","hi":0,"closure":"left_closed","kind":"poly","coeffs":[0]},
      {"lo":0,"hi":"+inf","closure":"closed","kind":"poly","coeffs":[0,2]}]})");
  const FunctionSpec f = function_from_json(j);
  EXPECT_EQ(evaluate(f, Point{-3.0}), 0.0);
  EXPECT_EQ(evaluate(f, Point{1.5}), 3.0);
}

TEST(FunctionJson, ErrorsNameTheField) {
  auto fails_with = [](const char* text, const char* needle) {
    try {
      function_from_json(Json::parse(text));
    } catch (const InvalidArgument& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  EXPECT_TRUE(fails_with(R"({"id":"x"})", "pieces"));
  EXPECT_TRUE(fails_with(R"({"pieces":[{"lo":0,"hi":1,"closure":"closed"}]})", "coeffs"));
  EXPECT_TRUE(fails_with(R"({"pieces":[{"lo":0,"hi":1,"closure":"half","coeffs":[1]}]})", "closure"));
  EXPECT_TRUE(fails_with(R"({"pieces":[{"lo":"x","hi":1,"closure":"closed","coeffs":[1]}]})", "bound"));
  EXPECT_TRUE(
      fails_with(R"({"pieces":[{"lo":0,"hi":1,"closure":"closed","coeffs":[1]}],"domain":{"lo":0,"hi":2}})", "domain"));
}

TEST(BoxText, ParsesAndPrints) {
  const Box b = box_from_string("0,2:-inf,inf");
  EXPECT_EQ(b.dimension(), 2u);
  EXPECT_EQ(b[1].lo, -kInf);
  EXPECT_EQ(box_to_string(b), "0,2:-inf,+inf");
  EXPECT_THROW(box_from_string("0"), InvalidArgument);
  EXPECT_THROW(box_from_string("a,b"), InvalidArgument);
  EXPECT_THROW(box_from_string("2,1"), InvalidArgument);
  EXPECT_EQ(point_from_string("0.5,9"), (Point{0.5, 9.0}));
  EXPECT_THROW(point_from_string("1,inf"), InvalidArgument);
}

TEST(ProxJson, Fields) {
  const auto f = builtin("negquad");
  const Json j = to_json(prox(ProxQuery{f, Box::line(0, 1), {0.3}}));
  EXPECT_EQ(j["argmin"], Json::parse("[[1.0]]"));
  EXPECT_EQ(j["attained"], "verified");
  EXPECT_EQ(j["multiplicity"], "single");
  for (const char* k : {"value", "residual", "evals"}) EXPECT_TRUE(j.contains(k)) << k;
}

TEST(CertificateJson, InfiniteUpperAsString) {
  AlphaCertificate c;
  const Json j = to_json(c);
  EXPECT_EQ(j["interval"]["upper"], "+inf");
  EXPECT_EQ(j["status"], "indeterminate");
}

TEST(Csv, WitnessTable) {
  const auto f = builtin("negquad");
  const Box set = Box::line(0, 1);
  CertifyOptions opts;
  opts.keep_table = true;
  const std::vector<Point> zs{{0.0}}, xs{{0.0}, {1.0}};
  const auto c = alpha_interval(f, set, zs, xs, opts);
  const std::string csv = witness_table_csv(c);
  EXPECT_EQ(csv, "z,xbar,x,lhs,ip,bound_type,bound_value\n0,1,0,-2,-1,upper,2.000000003\n");
}

TEST(Csv, Trace) {
  PPAConfig cfg;
  cfg.x0 = {0.5, 9.0};
  cfg.max_iters = 2;
  cfg.known_min = Point{2.0, 0.0};
  const auto t = run(builtin("quad2d"), Box({Interval{0, 2}, Interval{-kInf, kInf}}), cfg);
  const std::string csv = trace_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "k,x,h,step_norm,fejer_dist");
  EXPECT_NE(csv.find("\n1,0.5;9,80.25,0,"), std::string::npos);
  EXPECT_NE(csv.find("\n2,2;3,3,"), std::string::npos);
  EXPECT_NE(csv.find("\n3,2;1,-5,"), std::string::npos);
}

TEST(Numbers, Format) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(-kInf), "-inf");
  EXPECT_EQ(bound_from_json(Json("-inf")), -kInf);
  EXPECT_THROW(bound_from_json(Json("nope")), InvalidArgument);
}
