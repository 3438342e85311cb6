#include "proxcvx/cli.hpp"

#include <fstream>
#include <iterator>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "proxcvx/io.hpp"
#include "proxcvx/suite.hpp"

namespace proxcvx {

namespace {

struct Options {
  std::string fn;
  std::string fn_json;
  std::string set;
  std::string z;
  double gamma = 1.0;
  double alpha = 1.0;
  bool alpha_given = false;
  std::string x0;
  std::string x;
  std::string xi;
  std::string xbar;
  std::string kind;
  double beta = 1.0;
  int max_iters = 200;
  bool sublevel = false;
  std::optional<int> grid;
  std::string output = "json";
  std::string output_path;
  std::string filter;
};

/// "name", "name:4" or "name:n=4".
FunctionSpec builtin_from_flag(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return builtin(text);
  const std::string name = text.substr(0, colon);
  std::string arg = text.substr(colon + 1);
  std::string key = "n";
  if (const auto eq = arg.find('='); eq != std::string::npos) {
    key = arg.substr(0, eq);
    arg = arg.substr(eq + 1);
  }
  double v = 0.0;
  try {
    v = std::stod(arg);
  } catch (const std::exception&) {
    throw InvalidArgument(fmt::format("--fn: cannot parse parameter '{}'", arg));
  }
  return builtin(name, {{key, v}});
}

FunctionSpec load_function(const Options& o) {
  if (!o.fn.empty() && !o.fn_json.empty()) throw InvalidArgument("--fn and --fn-json are mutually exclusive");
  if (!o.fn.empty()) return builtin_from_flag(o.fn);
  if (o.fn_json.empty()) throw InvalidArgument("--fn or --fn-json is required");
  std::string text = o.fn_json;
  if (text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw InvalidArgument(fmt::format("--fn-json: cannot read '{}'", text.substr(1)));
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(fmt::format("--fn-json: {}", e.what()));
  }
  return function_from_json(j);
}

Box load_set(const Options& o, const FunctionSpec& f) {
  const Box set = o.set.empty() ? f.domain() : box_from_string(o.set);
  if (set.dimension() != f.dimension()) {
    throw InvalidArgument(fmt::format("--set: has {} coordinates, the function has {}", set.dimension(), f.dimension()));
  }
  return set;
}

Point required_point(const std::string& text, const char* flag, std::size_t dim) {
  if (text.empty()) throw InvalidArgument(fmt::format("{} is required", flag));
  Point p = point_from_string(text);
  if (p.size() != dim) throw InvalidArgument(fmt::format("{}: expected {} coordinates", flag, dim));
  return p;
}

struct Grids {
  std::vector<Point> z;
  std::vector<Point> x;
};

Grids grids(const Options& o, const FunctionSpec& f, const Box& set) {
  if (!o.grid) return {default_zgrid(f, set), default_xgrid(f, set)};
  GridSpec g;
  g.points_per_coordinate = std::min(*o.grid, 33);
  g.validate();
  Grids out{sample_points(f, set, g), {}};
  g.points_per_coordinate = *o.grid;
  out.x = sample_points(f, set, g);
  return out;
}

Json header(const char* command, const FunctionSpec& f, const Box& set) {
  return {{"command", command}, {"function", f.id}, {"set", box_to_string(set)}};
}

void merge(Json& into, const Json& from) {
  for (const auto& [k, v] : from.items()) into[k] = v;
}

struct Report {
  std::string text;
  int code = 0;
};

Report json_report(const Json& j, int code) { return {j.dump(2) + "\n", code}; }

void require_json(const Options& o, const char* command) {
  if (o.output != "json") throw InvalidArgument(fmt::format("--output: {} supports json only", command));
}

Report cmd_prox(const Options& o) {
  require_json(o, "prox");
  const FunctionSpec f = load_function(o);
  const Box set = load_set(o, f);
  const Point z = required_point(o.z, "--z", f.dimension());
  const ProxResult r = prox(ProxQuery{f, set, z, o.gamma});
  Json j = header("prox", f, set);
  j["z"] = point_from_string(o.z);
  j["gamma"] = o.gamma;
  merge(j, to_json(r));
  return json_report(j, r.attained == Attainment::kDivergent ? 1 : 0);
}

Report cmd_moreau(const Options& o) {
  require_json(o, "moreau");
  const FunctionSpec f = load_function(o);
  const Box set = load_set(o, f);
  const Point z = required_point(o.z, "--z", f.dimension());
  const ProxResult r = prox(ProxQuery{f, set, z, 1.0 / o.alpha});
  Json j = header("moreau", f, set);
  j["z"] = z;
  j["alpha"] = o.alpha;
  if (r.attained == Attainment::kDivergent) {
    j["envelope"] = "-inf";
    j["gradient"] = nullptr;
    j["prox"] = to_json(r);
    return json_report(j, 1);
  }
  j["envelope"] = bound_to_json(r.value);
  j["gradient"] = moreau_gradient(f, set, z, o.alpha);
  j["prox"] = to_json(r);
  return json_report(j, 0);
}

Report cmd_certify(const Options& o) {
  const FunctionSpec f = load_function(o);
  const Box set = load_set(o, f);
  const Grids g = grids(o, f, set);
  CertifyOptions opts;
  opts.keep_table = o.output == "csv";
  const AlphaCertificate c = alpha_interval(f, set, g.z, g.x, opts);
  int code = c.status == CertificateStatus::kCertified ? 0 : 1;
  std::optional<AlphaCheck> check;
  if (o.alpha_given) {
    check = check_alpha(f, set, o.alpha, g.z, g.x);
    code = check->pass ? 0 : 1;
  }
  if (o.output == "csv") return {witness_table_csv(c), code};
  Json j = header("certify", f, set);
  merge(j, to_json(c));
  if (check) {
    Json cj = to_json(*check);
    cj["alpha"] = o.alpha;
    j["check"] = cj;
  }
  return json_report(j, code);
}

Report cmd_subdiff(const Options& o) {
  require_json(o, "subdiff");
  const FunctionSpec f = load_function(o);
  const Box set = load_set(o, f);
  const Grids g = grids(o, f, set);
  const std::string kind = o.kind.empty() ? "gutierrez" : o.kind;
  Json j = header("subdiff", f, set);
  if (kind == "strongly-g") {
    const std::vector<Triple> triples = default_triples(f, set);
    const StronglyGReport r = strongly_G_check(f, set, g.z, g.x, triples, {}, o.beta);
    merge(j, to_json(r));
    return json_report(j, r.pass ? 0 : 1);
  }
  const Point x = required_point(o.x, "--x", f.dimension());
  j["x"] = x;
  if (kind == "charmin") {
    const CharminReport r = charmin_check(f, set, x, g.x);
    merge(j, to_json(r));
    return json_report(j, r.agree ? 0 : 1);
  }
  const Point xi = o.xi.empty() ? Point(f.dimension(), 0.0) : required_point(o.xi, "--xi", f.dimension());
  j["xi"] = xi;
  const MembershipReport r = in_subdiff(subdiff_kind_from_string(kind), f, set, x, xi, g.x);
  merge(j, to_json(r));
  return json_report(j, r.member ? 0 : 1);
}

Report cmd_ppa(const Options& o) {
  const FunctionSpec f = load_function(o);
  const Box set = load_set(o, f);
  PPAConfig pc;
  pc.x0 = required_point(o.x0, "--x0", f.dimension());
  pc.max_iters = o.max_iters;
  pc.gamma = o.gamma;
  pc.mode = o.sublevel ? StepMode::kSublevel : StepMode::kStandard;
  if (!o.xbar.empty()) pc.known_min = required_point(o.xbar, "--xbar", f.dimension());
  const PPATrace t = run(f, set, pc);
  const int code = t.stop_reason == StopReason::kProxFailure ? 1 : 0;
  if (o.output == "csv") return {trace_csv(t), code};
  Json j = header("ppa", f, set);
  j["x0"] = pc.x0;
  merge(j, to_json(t));
  j["monotone"] = to_json(check_monotone(t));
  if (pc.known_min) j["fejer"] = to_json(check_fejer(f, set, t, *pc.known_min));
  return json_report(j, code);
}

Report cmd_probe(const Options& o) {
  require_json(o, "probe");
  const std::string kind = o.kind.empty() ? "quasiconvex" : o.kind;
  if (kind == "identities") {
    const ProbeReport r = identity_selftest();
    Json j{{"command", "probe"}};
    merge(j, to_json(r));
    return json_report(j, r.consistent ? 0 : 1);
  }
  const FunctionSpec f = load_function(o);
  if (kind == "coercivity") {
    const CoercivityReport r = coercivity_probe(f);
    Json j{{"command", "probe"}, {"function", f.id}};
    merge(j, to_json(r));
    return json_report(j, 0);
  }
  static const std::map<std::string, QcxKind> kinds{{"quasiconvex", QcxKind::kQuasiconvex},
                                                    {"semistrict", QcxKind::kSemistrict},
                                                    {"strict", QcxKind::kStrict},
                                                    {"strong", QcxKind::kStrong}};
  const auto it = kinds.find(kind);
  if (it == kinds.end()) throw InvalidArgument(fmt::format("--kind: unknown probe '{}'", kind));
  const Box set = load_set(o, f);
  const std::vector<Triple> triples = default_triples(f, set);
  const ProbeReport r = quasiconvexity_probe(it->second, f, set, triples, o.beta);
  Json j = header("probe", f, set);
  merge(j, to_json(r));
  return json_report(j, r.consistent ? 0 : 1);
}

Report cmd_suite(const Options& o) {
  SuiteOptions so;
  so.filter = o.filter;
  so.grid = o.grid;
  if (so.grid && *so.grid < 3) throw InvalidArgument("--grid: needs at least 3 points");
  const auto results = run_suite(so);
  if (results.empty()) throw InvalidArgument(fmt::format("--filter: no criterion matches '{}'", o.filter));
  bool all = true;
  for (const auto& r : results) all = all && r.pass;
  const int code = all ? 0 : 1;
  if (o.output == "csv") throw InvalidArgument("--output: suite supports json and the default table");
  return {o.output == "table" ? suite_table(results) : to_json(results).dump(2) + "\n", code};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Proximity operators, prox-convexity certificates and the proximal point algorithm", "proxcvx"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Expand all help");

  auto common = [&](CLI::App* sub, bool with_set = true) {
    sub->add_option("--fn", o.fn, "Builtin function, optionally with a parameter (staircase:4)");
    sub->add_option("--fn-json", o.fn_json, "Inline FunctionSpec JSON, or @path to a file");
    if (with_set) sub->add_option("--set", o.set, "Box such as 0,2:-inf,inf (default: the domain)");
    sub->add_option("--output", o.output, "Report format")->check(CLI::IsMember({"json", "csv", "table"}));
    sub->add_option("--output-path", o.output_path, "Write the report to this file");
  };

  auto* prox_cmd = app.add_subcommand("prox", "Proximity operator at one point");
  common(prox_cmd);
  prox_cmd->add_option("--z", o.z, "Point, comma separated");
  prox_cmd->add_option("--gamma", o.gamma, "Step parameter")->check(CLI::PositiveNumber);

  auto* moreau_cmd = app.add_subcommand("moreau", "Moreau envelope value and gradient");
  common(moreau_cmd);
  moreau_cmd->add_option("--z", o.z, "Point, comma separated");
  moreau_cmd->add_option("--alpha", o.alpha, "Envelope parameter")->check(CLI::PositiveNumber);

  auto* certify_cmd = app.add_subcommand("certify", "Feasible prox-convex values on sampled grids");
  common(certify_cmd);
  certify_cmd->add_option("--alpha", o.alpha, "Also check this value directly")->check(CLI::PositiveNumber);
  certify_cmd->add_option("--grid", o.grid, "Points per coordinate of the x-grid")->check(CLI::Range(3, 100000));

  auto* subdiff_cmd = app.add_subcommand("subdiff", "Subdifferential membership checks");
  common(subdiff_cmd);
  subdiff_cmd->add_option("--kind", o.kind, "Check to run")
      ->check(CLI::IsMember({"convex", "gutierrez", "plastria", "charmin", "strongly-g"}));
  subdiff_cmd->add_option("--x", o.x, "Base point");
  subdiff_cmd->add_option("--xi", o.xi, "Candidate subgradient (default 0)");
  subdiff_cmd->add_option("--beta", o.beta, "Strong quasiconvexity modulus (strongly-g)");
  subdiff_cmd->add_option("--grid", o.grid, "Points per coordinate of the y-grid")->check(CLI::Range(3, 100000));

  auto* ppa_cmd = app.add_subcommand("ppa", "Proximal point algorithm");
  common(ppa_cmd);
  ppa_cmd->add_option("--x0", o.x0, "Starting point");
  ppa_cmd->add_option("--max-iters", o.max_iters, "Iteration cap")->check(CLI::PositiveNumber);
  ppa_cmd->add_option("--gamma", o.gamma, "Step parameter")->check(CLI::PositiveNumber);
  ppa_cmd->add_option("--xbar", o.xbar, "Known minimizer for Fejer distances");
  ppa_cmd->add_flag("--sublevel", o.sublevel, "Restrict each step to the current sublevel set");

  auto* probe_cmd = app.add_subcommand("probe", "Quasiconvexity and coercivity probes");
  common(probe_cmd);
  probe_cmd->add_option("--kind", o.kind, "Probe to run")
      ->check(CLI::IsMember({"quasiconvex", "semistrict", "strict", "strong", "coercivity", "identities"}));
  probe_cmd->add_option("--beta", o.beta, "Modulus for the strong probe")->check(CLI::PositiveNumber);

  auto* suite_cmd = app.add_subcommand("suite", "Run the acceptance criteria");
  suite_cmd->add_option("--filter", o.filter, "Criterion id, tag or name substring");
  suite_cmd->add_option("--grid", o.grid, "Points per coordinate of the certification x-grids");
  suite_cmd->add_option("--output", o.output, "Report format")->check(CLI::IsMember({"json", "table"}));
  suite_cmd->add_option("--output-path", o.output_path, "Write the report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  if (suite_cmd->parsed() && suite_cmd->count("--output") == 0) o.output = "table";
  if (certify_cmd->parsed()) o.alpha_given = certify_cmd->count("--alpha") > 0;
  if (!suite_cmd->parsed() && o.output == "table") {
    err << "error: --output table is only available for suite\n";
    return 2;
  }

  Report report;
  try {
    if (prox_cmd->parsed()) report = cmd_prox(o);
    else if (moreau_cmd->parsed()) report = cmd_moreau(o);
    else if (certify_cmd->parsed()) report = cmd_certify(o);
    else if (subdiff_cmd->parsed()) report = cmd_subdiff(o);
    else if (ppa_cmd->parsed()) report = cmd_ppa(o);
    else if (probe_cmd->parsed()) report = cmd_probe(o);
    else report = cmd_suite(o);
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  if (o.output_path.empty()) {
    out << report.text;
  } else {
    std::ofstream file(o.output_path);
    if (!file) {
      err << "error: --output-path: cannot write '" << o.output_path << "'\n";
      return 2;
    }
    file << report.text;
  }
  return report.code;
}

}  // namespace proxcvx
