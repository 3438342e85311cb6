#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "proxcvx/io.hpp"
#include "proxcvx/suite.hpp"

namespace py = pybind11;
using namespace proxcvx;

namespace {

// Results cross the boundary as plain dicts, through the same JSON the CLI prints.
py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

FunctionSpec function_arg(const py::object& fn) {
  if (py::isinstance<py::str>(fn)) {
    const auto text = fn.cast<std::string>();
    const auto colon = text.find(':');
    if (colon == std::string::npos) return builtin(text);
    return builtin(text.substr(0, colon), {{"n", std::stod(text.substr(colon + 1))}});
  }
  if (py::isinstance<py::dict>(fn)) {
    const auto text = py::module_::import("json").attr("dumps")(fn).cast<std::string>();
    return function_from_json(Json::parse(text));
  }
  throw InvalidArgument("fn must be a builtin name or a FunctionSpec dict");
}

Box set_arg(const FunctionSpec& f, const std::optional<std::string>& set) {
  const Box b = set ? box_from_string(*set) : f.domain();
  if (b.dimension() != f.dimension()) throw InvalidArgument("set dimension does not match the function");
  return b;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Proximity operators, prox-convexity certificates and the proximal point algorithm";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def("builtin_names", &builtin_names);

  m.def(
      "function_json", [](const py::object& fn) { return to_python(to_json(function_arg(fn))); }, py::arg("fn"));

  m.def(
      "evaluate", [](const py::object& fn, const Point& x) { return evaluate(function_arg(fn), x); }, py::arg("fn"),
      py::arg("x"));

  m.def(
      "prox",
      [](const py::object& fn, const Point& z, double gamma, const std::optional<std::string>& set) {
        const FunctionSpec f = function_arg(fn);
        const Box b = set_arg(f, set);
        ProxResult r;
        {
          py::gil_scoped_release release;
          r = prox(ProxQuery{f, b, z, gamma});
        }
        return to_python(to_json(r));
      },
      py::arg("fn"), py::arg("z"), py::arg("gamma") = 1.0, py::arg("set") = py::none());

  m.def(
      "certify",
      [](const py::object& fn, const std::optional<std::string>& set, std::optional<int> grid) {
        const FunctionSpec f = function_arg(fn);
        const Box b = set_arg(f, set);
        AlphaCertificate c;
        {
          py::gil_scoped_release release;
          std::vector<Point> zs = default_zgrid(f, b), xs = default_xgrid(f, b);
          if (grid) {
            GridSpec g;
            g.points_per_coordinate = std::min(*grid, 33);
            g.validate();
            zs = sample_points(f, b, g);
            g.points_per_coordinate = *grid;
            xs = sample_points(f, b, g);
          }
          c = alpha_interval(f, b, zs, xs);
        }
        return to_python(to_json(c));
      },
      py::arg("fn"), py::arg("set") = py::none(), py::arg("grid") = py::none());

  m.def(
      "ppa",
      [](const py::object& fn, const Point& x0, const std::optional<std::string>& set, int max_iters, double gamma,
         const std::optional<Point>& xbar) {
        const FunctionSpec f = function_arg(fn);
        const Box b = set_arg(f, set);
        PPAConfig cfg;
        cfg.x0 = x0;
        cfg.max_iters = max_iters;
        cfg.gamma = gamma;
        cfg.known_min = xbar;
        PPATrace t;
        {
          py::gil_scoped_release release;
          t = run(f, b, cfg);
        }
        Json j = to_json(t);
        j["monotone"] = to_json(check_monotone(t));
        if (xbar) j["fejer"] = to_json(check_fejer(f, b, t, *xbar));
        return to_python(j);
      },
      py::arg("fn"), py::arg("x0"), py::arg("set") = py::none(), py::arg("max_iters") = 200, py::arg("gamma") = 1.0,
      py::arg("xbar") = py::none());

  m.def(
      "suite",
      [](const std::string& filter) {
        std::vector<CriterionResult> r;
        {
          py::gil_scoped_release release;
          r = run_suite(SuiteOptions{filter, std::nullopt});
        }
        return to_python(to_json(r));
      },
      py::arg("filter") = "");
}
