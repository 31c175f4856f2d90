#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "weightlab/extrapolation.hpp"
#include "weightlab/harness.hpp"
#include "weightlab/lorentz.hpp"
#include "weightlab/maximal.hpp"
#include "weightlab/operators.hpp"
#include "weightlab/weights.hpp"

namespace py = pybind11;
using namespace weightlab;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

SampledFunction field(const GridPtr& g, const Array& a) {
  if (static_cast<std::size_t>(a.size()) != g->size())
    throw DomainError("array has " + std::to_string(a.size()) + " values, grid has " + std::to_string(g->size()));
  return SampledFunction(g, std::vector<double>(a.data(), a.data() + a.size()));
}

ComplexField complex_field(const GridPtr& g, const py::array_t<Complex, py::array::c_style | py::array::forcecast>& a) {
  if (static_cast<std::size_t>(a.size()) != g->size())
    throw DomainError("array has " + std::to_string(a.size()) + " values, grid has " + std::to_string(g->size()));
  return ComplexField(g, std::vector<Complex>(a.data(), a.data() + a.size()));
}

Weight weight(const GridPtr& g, const std::optional<Array>& v) { return v ? Weight(field(g, *v)) : Weight::unit(g); }

py::array_t<double> to_array(const SampledFunction& f) {
  const auto& g = *f.grid();
  py::array_t<double> out = g.dim() == 1 ? py::array_t<double>(g.n()) : py::array_t<double>({g.n(), g.n()});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

py::array_t<Complex> to_array(const ComplexField& f) {
  const auto& g = *f.grid();
  py::array_t<Complex> out = g.dim() == 1 ? py::array_t<Complex>(g.n()) : py::array_t<Complex>({g.n(), g.n()});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

MaximalMethod method(const std::string& name) {
  if (name == "fast") return MaximalMethod::fast;
  if (name == "oracle") return MaximalMethod::oracle;
  throw NameError("unknown maximal method '" + name + "' (fast, oracle)");
}

MultiplierOptions multiplier_options(const std::string& mode, std::size_t padding) {
  MultiplierOptions o;
  if (mode == "cell_average") o.mode = Discretization::cell_average;
  else if (mode != "point") throw NameError("unknown discretization '" + mode + "' (point, cell_average)");
  o.padding = padding;
  return o;
}

Rational rational(const py::object& x) {
  // Accepts int, fractions.Fraction or a "a/b" string.
  if (py::isinstance<py::int_>(x)) return Rational(x.cast<long long>());
  if (py::hasattr(x, "numerator") && py::hasattr(x, "denominator"))
    return {x.attr("numerator").cast<long long>(), x.attr("denominator").cast<long long>()};
  const auto s = py::str(x).cast<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(std::stoll(s));
  return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
}

py::object fraction(const Rational& q) {
  return py::module_::import("fractions").attr("Fraction")(q.numerator(), q.denominator());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "weightlab core: grids, maximal functions, weight constants, Lorentz norms, multipliers";

  auto base = py::register_exception<Error>(m, "WeightlabError", PyExc_RuntimeError);
  py::register_exception<DomainError>(m, "DomainError", base);
  py::register_exception<GridMismatch>(m, "GridMismatch", base);
  py::register_exception<NameError>(m, "UnknownNameError", base);

  py::class_<Grid, std::shared_ptr<Grid>>(m, "Grid")
      .def(py::init([](int dim, double lo, double hi, std::size_t n) {
             return std::const_pointer_cast<Grid>(make_grid(dim, lo, hi, n));
           }),
           py::arg("dim"), py::arg("lo"), py::arg("hi"), py::arg("n"))
      .def_property_readonly("dim", &Grid::dim)
      .def_property_readonly("lo", &Grid::lo)
      .def_property_readonly("hi", &Grid::hi)
      .def_property_readonly("n", &Grid::n)
      .def_property_readonly("h", &Grid::h)
      .def_property_readonly("size", &Grid::size)
      .def("axis_centers", &Grid::axis_centers)
      .def("__repr__", [](const Grid& g) {
        return "Grid(dim=" + std::to_string(g.dim()) + ", lo=" + format_number(g.lo()) + ", hi=" +
               format_number(g.hi()) + ", n=" + std::to_string(g.n()) + ")";
      });

  m.def(
      "hl_maximal", [](const GridPtr& g, const Array& f, const std::string& how) {
        return to_array(hl_maximal(field(g, f), method(how)));
      },
      py::arg("grid"), py::arg("f"), py::arg("method") = "fast");
  m.def(
      "weighted_maximal", [](const GridPtr& g, const Array& f, const Array& u0) {
        return to_array(weighted_maximal(field(g, f), Weight(field(g, u0))));
      },
      py::arg("grid"), py::arg("f"), py::arg("u0"));
  m.def(
      "power_maximal", [](const GridPtr& g, const Array& f, double mu) {
        return to_array(power_maximal(field(g, f), mu));
      },
      py::arg("grid"), py::arg("f"), py::arg("mu"));

  m.def(
      "a1_constant", [](const GridPtr& g, const Array& u) { return a1_constant(Weight(field(g, u))); },
      py::arg("grid"), py::arg("u"));
  m.def(
      "ap_constant", [](const GridPtr& g, const Array& v, double p) { return ap_constant(Weight(field(g, v)), p); },
      py::arg("grid"), py::arg("v"), py::arg("p"));

  m.def(
      "weak_norm", [](const GridPtr& g, const Array& f, double p, const std::optional<Array>& v) {
        return weak_norm(field(g, f), weight(g, v), p);
      },
      py::arg("grid"), py::arg("f"), py::arg("p"), py::arg("v") = py::none());
  m.def(
      "lorentz_p1_norm", [](const GridPtr& g, const Array& f, double p, const std::optional<Array>& v) {
        return lorentz_p1_norm(field(g, f), weight(g, v), p);
      },
      py::arg("grid"), py::arg("f"), py::arg("p"), py::arg("v") = py::none());
  m.def(
      "lp_norm", [](const GridPtr& g, const Array& f, double p, const std::optional<Array>& v) {
        return lp_norm(field(g, f), weight(g, v), p);
      },
      py::arg("grid"), py::arg("f"), py::arg("p"), py::arg("v") = py::none());
  m.def(
      "kolmogorov_sup", [](const GridPtr& g, const Array& f, double p, double r, const std::optional<Array>& v) {
        return kolmogorov_sup(field(g, f), weight(g, v), p, r);
      },
      py::arg("grid"), py::arg("f"), py::arg("p"), py::arg("r"), py::arg("v") = py::none());

  m.def(
      "hilbert",
      [](const GridPtr& g, const py::array_t<Complex, py::array::c_style | py::array::forcecast>& f,
         const std::string& mode, std::size_t padding) {
        // Complex input so that H(H f) round-trips the Nyquist mode.
        return to_array(hilbert(complex_field(g, f), multiplier_options(mode, padding)));
      },
      py::arg("grid"), py::arg("f"), py::arg("mode") = "point", py::arg("padding") = 1);
  m.def(
      "half_line_multiplier",
      [](const GridPtr& g, double t, const Array& f, const std::string& mode, std::size_t padding) {
        return to_array(half_line_multiplier(t, field(g, f), multiplier_options(mode, padding)));
      },
      py::arg("grid"), py::arg("t"), py::arg("f"), py::arg("mode") = "point", py::arg("padding") = 1);
  m.def(
      "bochner_riesz",
      [](const GridPtr& g, double lambda, const Array& f, const std::string& mode, std::size_t padding) {
        return to_array(bochner_riesz(lambda, field(g, f), multiplier_options(mode, padding)));
      },
      py::arg("grid"), py::arg("lam"), py::arg("f"), py::arg("mode") = "point", py::arg("padding") = 1);

  m.def("c_p_theta_mu", &c_p_theta_mu, py::arg("p"), py::arg("theta"), py::arg("mu"), py::arg("r"));
  m.def(
      "theta_mu_t_selection", [](double p, double r, int n) {
        const auto s = theta_mu_t_selection(p, r, n);
        return py::dict(py::arg("theta") = s.theta, py::arg("mu") = s.mu, py::arg("t") = s.t, py::arg("R") = s.R);
      },
      py::arg("p"), py::arg("r"), py::arg("n_dim") = 1);
  m.def(
      "phi_up_exponents", [](const std::string& name, const py::object& p, const py::object& lambda, int n) {
        const auto up = phi_up_symbolic(reference_constants(name, rational(lambda), n), rational(p));
        return py::make_tuple(fraction(up.a), fraction(up.b));
      },
      py::arg("name"), py::arg("p"), py::arg("lam") = "1/2", py::arg("n") = 2,
      "Exponents (a, b) of the upward extrapolated constant r^a (1 + log r)^b.");
  m.def(
      "bochner_limited_window", [](int n, const py::object& lambda) {
        const auto w = bochner_limited_window(n, rational(lambda));
        return py::make_tuple(fraction(w.lo), fraction(w.hi));
      },
      py::arg("n"), py::arg("lam"));

  m.def("suites", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : suites()) out.emplace_back(s.name, s.description);
    return out;
  });
  m.def(
      "run_experiment_json", [](const std::map<std::string, std::string>& settings, bool include_runtime) {
        ExperimentConfig cfg;
        for (const auto& [k, v] : settings) cfg.set(k, v);
        Report r;
        {
          py::gil_scoped_release release;
          r = run_experiment(cfg);
        }
        return report_json(r, include_runtime);
      },
      py::arg("settings"), py::arg("include_runtime") = true);
}
