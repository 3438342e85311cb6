#include "proxcvx/io.hpp"

#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace proxcvx {

namespace {

Json num(double v) { return bound_to_json(v); }

Json point_json(std::span<const double> x) {
  Json a = Json::array();
  for (double v : x) a.push_back(num(v));
  return a;
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_same_v<T, Point>) {
    return point_json(*v);
  } else {
    return to_json(*v);
  }
}

std::string closure_name(Closure c) {
  switch (c) {
    case Closure::kClosed: return "closed";
    case Closure::kLeftClosed: return "left_closed";
    case Closure::kRightClosed: return "right_closed";
    case Closure::kOpen: return "open";
  }
  return "?";
}

Closure closure_from(const std::string& s) {
  if (s == "closed") return Closure::kClosed;
  if (s == "left_closed") return Closure::kLeftClosed;
  if (s == "right_closed") return Closure::kRightClosed;
  if (s == "open") return Closure::kOpen;
  throw InvalidArgument(fmt::format("closure: unknown value '{}'", s));
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw InvalidArgument(fmt::format("{}: missing field '{}'", where, name));
  return j.at(name);
}

double number(const Json& j, const std::string& where) {
  if (!j.is_number()) throw InvalidArgument(fmt::format("{}: expected a number", where));
  return j.get<double>();
}

Json interval_json(const Interval& i) { return Json{{"lo", num(i.lo)}, {"hi", num(i.hi)}}; }

Json term_json(const Univariate& u) {
  Json pieces = Json::array();
  for (const auto& p : u.pieces()) {
    Json coeffs = Json::array();
    for (double c : p.coeffs) coeffs.push_back(c);
    pieces.push_back({{"lo", num(p.lo)},
                      {"hi", num(p.hi)},
                      {"closure", closure_name(p.closure)},
                      {"kind", p.kind == PieceKind::kPoly ? "poly" : "log"},
                      {"coeffs", coeffs}});
  }
  Json t{{"pieces", pieces}, {"domain", interval_json(u.domain())}};
  if (!u.exceptions().empty()) {
    Json ex = Json::array();
    for (const auto& e : u.exceptions()) ex.push_back({{"x", e.x}, {"value", e.value}});
    t["exceptions"] = ex;
  }
  return t;
}

Univariate term_from(const Json& j, const std::string& where) {
  const Json& pj = field(j, "pieces", where);
  if (!pj.is_array() || pj.empty()) throw InvalidArgument(fmt::format("{}.pieces: expected a nonempty array", where));
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < pj.size(); ++i) {
    const std::string at = fmt::format("{}.pieces[{}]", where, i);
    const Json& p = pj[i];
    Piece piece;
    piece.lo = bound_from_json(field(p, "lo", at));
    piece.hi = bound_from_json(field(p, "hi", at));
    piece.closure = closure_from(field(p, "closure", at).get<std::string>());
    const std::string kind = p.value("kind", std::string("poly"));
    if (kind == "poly") piece.kind = PieceKind::kPoly;
    else if (kind == "log") piece.kind = PieceKind::kLog;
    else throw InvalidArgument(fmt::format("{}.kind: unknown value '{}'", at, kind));
    const Json& cj = field(p, "coeffs", at);
    if (!cj.is_array()) throw InvalidArgument(fmt::format("{}.coeffs: expected an array", at));
    for (const auto& c : cj) piece.coeffs.push_back(number(c, at + ".coeffs"));
    pieces.push_back(std::move(piece));
  }
  std::vector<PointException> exceptions;
  if (j.contains("exceptions")) {
    for (const auto& e : j.at("exceptions")) {
      exceptions.push_back({number(field(e, "x", where + ".exceptions"), where + ".exceptions.x"),
                            number(field(e, "value", where + ".exceptions"), where + ".exceptions.value")});
    }
  }
  Univariate u(std::move(pieces), std::move(exceptions));
  if (j.contains("domain")) {
    const Json& d = j.at("domain");
    const Interval declared{bound_from_json(field(d, "lo", where + ".domain")),
                            bound_from_json(field(d, "hi", where + ".domain"))};
    if (!(declared == u.domain())) {
      throw InvalidArgument(fmt::format("{}.domain: does not match the union of the pieces", where));
    }
  }
  return u;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return fmt::format("{}", v);
}

Json bound_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

double bound_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "-inf") return -kInf;
    if (s == "+inf" || s == "inf") return kInf;
  }
  throw InvalidArgument(fmt::format("bound: expected a number or \"-inf\"/\"+inf\", got {}", j.dump()));
}

Json to_json(const FunctionSpec& f) {
  Json j{{"id", f.id}, {"dimension", f.dimension()}};
  if (f.dimension() == 1) {
    Json t = term_json(f.terms[0]);
    for (auto& [k, v] : t.items()) j[k] = v;
  } else {
    Json terms = Json::array();
    for (const auto& t : f.terms) terms.push_back(term_json(t));
    j["terms"] = terms;
  }
  if (f.closed_form_prox) j["closed_form"] = *f.closed_form_prox;
  return j;
}

FunctionSpec function_from_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("function: expected a JSON object");
  FunctionSpec f;
  f.id = j.value("id", std::string("inline"));
  if (j.contains("terms")) {
    const Json& terms = j.at("terms");
    if (!terms.is_array()) throw InvalidArgument("function.terms: expected an array");
    for (std::size_t i = 0; i < terms.size(); ++i) f.terms.push_back(term_from(terms[i], fmt::format("terms[{}]", i)));
  } else {
    f.terms.push_back(term_from(j, "function"));
  }
  if (f.terms.empty() || f.terms.size() > 2) throw InvalidArgument("function.dimension: must be 1 or 2");
  if (j.contains("dimension") && j.at("dimension").get<std::size_t>() != f.terms.size()) {
    throw InvalidArgument("function.dimension: does not match the number of terms");
  }
  if (j.contains("closed_form")) f.closed_form_prox = j.at("closed_form").get<std::string>();
  return f;
}

namespace {

double parse_bound(const std::string& s, const std::string& where) {
  if (s == "inf" || s == "+inf") return kInf;
  if (s == "-inf") return -kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidArgument(fmt::format("{}: cannot parse '{}'", where, s));
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

Box box_from_string(const std::string& text) {
  std::vector<Interval> axes;
  for (const auto& coord : split(text, ':')) {
    const auto ends = split(coord, ',');
    if (ends.size() != 2) throw InvalidArgument(fmt::format("set: coordinate '{}' needs the form lo,hi", coord));
    axes.push_back({parse_bound(ends[0], "set"), parse_bound(ends[1], "set")});
  }
  return Box(std::move(axes));
}

std::string box_to_string(const Box& b) {
  std::string out;
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    if (i) out += ':';
    out += format_number(b[i].lo) + "," + format_number(b[i].hi);
  }
  return out;
}

Point point_from_string(const std::string& text) {
  Point p;
  for (const auto& s : split(text, ',')) p.push_back(parse_bound(s, "point"));
  for (double v : p) {
    if (!std::isfinite(v)) throw InvalidArgument("point: coordinates must be finite");
  }
  return p;
}

Json to_json(const Box& b) {
  Json a = Json::array();
  for (const auto& i : b.axes()) a.push_back(interval_json(i));
  return a;
}

Json to_json(const ProxResult& r) {
  Json argmin = Json::array();
  for (const auto& p : r.argmin) argmin.push_back(point_json(p));
  return {{"argmin", argmin},
          {"value", num(r.value)},
          {"attained", to_string(r.attained)},
          {"multiplicity", to_string(r.multiplicity)},
          {"residual", num(r.residual)},
          {"evals", r.evaluations},
          {"closed_form", r.closed_form}};
}

Json to_json(const Witness& w) {
  return {{"z", point_json(w.z)}, {"xbar", point_json(w.xbar)}, {"x", point_json(w.x)},
          {"lhs", num(w.lhs)},    {"ip", num(w.ip)}};
}

Json to_json(const AlphaCertificate& c) {
  Json j{{"status", to_string(c.status)},
         {"interval",
          {{"lower", num(c.lower)},
           {"lower_closed", c.lower_closed},
           {"upper", num(c.upper)},
           {"upper_closed", c.upper_closed}}},
         {"lower_binding", optional_json(c.lower_binding)},
         {"upper_binding", optional_json(c.upper_binding)},
         {"witness", optional_json(c.witness)},
         {"diagnostic", c.diagnostic},
         {"z_samples", c.z_samples},
         {"x_samples", c.x_samples}};
  return j;
}

Json to_json(const AlphaCheck& c) {
  return {{"verdict", c.pass ? "pass" : "fail"},
          {"worst_slack", num(c.worst_slack)},
          {"violator", optional_json(c.violator)},
          {"pairs", c.pairs}};
}

Json to_json(const FirmReport& r) {
  Json violator = nullptr;
  if (r.violator) violator = Json::array({point_json(r.violator->first), point_json(r.violator->second)});
  return {{"fnem", r.fnem_holds},
          {"fne", r.fne_holds},
          {"worst_fnem_slack", num(r.worst_fnem_slack)},
          {"worst_fne_slack", num(r.worst_fne_slack)},
          {"violator", violator},
          {"pairs", r.pairs}};
}

Json to_json(const MembershipReport& r) {
  return {{"kind", to_string(r.kind)},
          {"verdict", r.member ? "member" : "non-member"},
          {"worst_slack", num(r.worst_slack)},
          {"violator", optional_json(r.violator)},
          {"samples", r.samples_checked}};
}

Json to_json(const CharminReport& r) {
  return {{"zero_in_plastria", r.zero_in_plastria},
          {"zero_in_gutierrez", r.zero_in_gutierrez},
          {"minimizes", r.minimizes},
          {"probe_in_gutierrez", r.probe_in_gutierrez},
          {"agree", r.agree},
          {"probe_size", r.probe_size}};
}

Json to_json(const StronglyGReport& r) {
  return {{"verdict", r.pass ? "pass" : "fail"},
          {"membership", r.membership},
          {"strong_quasiconvex", r.strong_quasiconvex},
          {"z_checked", r.z_checked},
          {"failing_z", optional_json(r.failing_z)},
          {"failing_xbar", optional_json(r.failing_xbar)},
          {"strong", to_json(r.strong)}};
}

Json to_json(const ConsequenceReport& r) {
  return {{"verdict", r.holds ? "pass" : "fail"},
          {"worst_slack", num(r.worst_slack)},
          {"violator", optional_json(r.violator)},
          {"samples", r.samples}};
}

Json to_json(const ProbeReport& r) {
  Json violator = nullptr;
  if (r.violator) {
    Json pts = Json::array();
    for (const auto& p : r.violator->points) pts.push_back(point_json(p));
    violator = {{"points", pts},
                {"scalars", point_json(r.violator->scalars)},
                {"lhs", num(r.violator->lhs)},
                {"rhs", num(r.violator->rhs)}};
  }
  return {{"property", r.property},
          {"verdict", r.consistent ? "consistent" : "violated"},
          {"violator", violator},
          {"samples", r.samples}};
}

Json to_json(const CoercivityReport& r) {
  Json ratios = Json::array();
  for (const auto& v : r.ratios) ratios.push_back(point_json(v));
  return {{"classification", r.classification},
          {"supercoercive", r.supercoercive},
          {"coercive", r.coercive},
          {"weakly_coercive", r.weakly_coercive},
          {"two_weakly_coercive", r.two_weakly_coercive},
          {"heuristic", r.heuristic},
          {"ratios", ratios}};
}

Json to_json(const PPATrace& t) {
  Json its = Json::array();
  for (const auto& x : t.iterates) its.push_back(point_json(x));
  return {{"iterates", its},
          {"values", point_json(t.values)},
          {"step_norms", point_json(t.step_norms)},
          {"fejer_distances", point_json(t.fejer_distances)},
          {"stop_reason", to_string(t.stop_reason)},
          {"failure", t.failure}};
}

Json to_json(const MonotoneReport& r) {
  Json first = nullptr;
  if (r.first_violation) first = *r.first_violation + 1;
  return {{"verdict", r.pass ? "pass" : "fail"}, {"first_violation_k", first}, {"pairs", r.pairs}};
}

Json to_json(const FejerReport& r) {
  Json first = nullptr;
  if (r.first_violation) first = *r.first_violation + 1;
  return {{"verdict", r.monotone ? "pass" : "fail"},
          {"first_violation_k", first},
          {"distances", point_json(r.distances)},
          {"rate", point_json(r.rate)},
          {"rate_bounded", r.rate_bounded}};
}

std::string witness_table_csv(const AlphaCertificate& c) {
  std::string out = "z,xbar,x,lhs,ip,bound_type,bound_value\n";
  for (const auto& row : c.table) {
    const bool has_bound = row.type == BoundType::kLower || row.type == BoundType::kUpper;
    out += fmt::format("{},{},{},{},{},{},{}\n", format_point(row.witness.z, ';'), format_point(row.witness.xbar, ';'),
                       format_point(row.witness.x, ';'), format_number(row.witness.lhs),
                       format_number(row.witness.ip), to_string(row.type),
                       has_bound ? format_number(row.bound) : std::string());
  }
  return out;
}

std::string trace_csv(const PPATrace& t) {
  std::string out = "k,x,h,step_norm,fejer_dist\n";
  for (std::size_t k = 0; k < t.iterates.size(); ++k) {
    out += fmt::format("{},{},{},{},{}\n", k + 1, format_point(t.iterates[k], ';'), format_number(t.values[k]),
                       format_number(t.step_norms[k]),
                       k < t.fejer_distances.size() ? format_number(t.fejer_distances[k]) : std::string());
  }
  return out;
}

}  // namespace proxcvx
