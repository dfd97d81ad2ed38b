#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gase/config.hpp"
#include "gase/errors.hpp"
#include "gase/runner.hpp"

namespace py = pybind11;
using namespace gase;

namespace {

py::dict table_to_dict(const Table& t) {
  py::dict out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    py::list col;
    for (const auto& row : t.rows) {
      if (const auto* d = std::get_if<double>(&row[c])) {
        col.append(*d);
      } else {
        col.append(std::get<std::string>(row[c]));
      }
    }
    out[py::str(t.columns[c])] = col;
  }
  return out;
}

RunOptions options(std::optional<std::uint64_t> seed, std::optional<std::uint64_t> samples,
                   unsigned threads) {
  return {seed, samples, threads};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Generalized area spectral efficiency of wireless links";

  // module-lifetime references, kept for the translator below
  static py::handle config_error =
      py::exception<ConfigError>(m, "ConfigError", PyExc_ValueError).release();
  static py::handle convergence_error =
      py::exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError).release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      // diagnostics as (line, key, message) tuples on the exception object
      py::list diags;
      for (const auto& d : e.diagnostics()) diags.append(py::make_tuple(d.line, d.key, d.message));
      py::object err = config_error(py::str(e.what()));
      err.attr("diagnostics") = diags;
      PyErr_SetObject(config_error.ptr(), err.ptr());
    } catch (const ConvergenceError& e) {
      PyErr_SetString(convergence_error.ptr(), e.what());
    } catch (const TailCertificationError& e) {
      PyErr_SetString(convergence_error.ptr(), e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<ScenarioConfig>(m, "Config")
      .def_static("parse", py::overload_cast<const std::string&>(&parse_config), py::arg("text"))
      .def("with_overrides",
           [](const ScenarioConfig& c, const std::string& text) { return parse_config(text, c); },
           py::arg("text"))
      .def("render", &render_config)
      .def("get", &ScenarioConfig::get, py::arg("key"))
      .def_readonly("label", &ScenarioConfig::label)
      .def_property_readonly("kind", [](const ScenarioConfig& c) { return to_string(c.kind); })
      .def_property_readonly("protocol",
                             [](const ScenarioConfig& c) -> std::optional<std::string> {
                               if (!c.protocol) return std::nullopt;
                               return std::string(to_string(*c.protocol));
                             })
      .def_readonly("values", &ScenarioConfig::values)
      .def_property_readonly("sweep_values",
                             [](const ScenarioConfig& c) -> std::optional<std::vector<double>> {
                               if (!c.sweep) return std::nullopt;
                               return c.sweep->values();
                             })
      .def("__eq__", [](const ScenarioConfig& a, const ScenarioConfig& b) { return a == b; })
      .def("__repr__", [](const ScenarioConfig& c) {
        return "<gase.Config " + std::string(to_string(c.kind)) +
               (c.label.empty() ? "" : " " + c.label) + ">";
      });

  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (const auto& p : presets()) names.push_back(p.name);
    return names;
  });
  m.def("preset", [](const std::string& name) { return find_preset(name).members; },
        py::arg("name"), "Member configurations of a built-in preset.");

  m.def("evaluate", [](const ScenarioConfig& c) { return table_to_dict(run_eval(c)); },
        py::arg("config"));
  m.def(
      "sweep",
      [](const ScenarioConfig& c, unsigned threads) {
        Table t;
        {
          py::gil_scoped_release release;
          t = run_sweep(c, options({}, {}, threads));
        }
        return table_to_dict(t);
      },
      py::arg("config"), py::arg("threads") = 1);
  m.def("optimize", [](const ScenarioConfig& c) { return table_to_dict(run_optimize(c)); },
        py::arg("config"));
  m.def(
      "verify",
      [](const ScenarioConfig& c, std::optional<std::uint64_t> seed,
         std::optional<std::uint64_t> samples, unsigned threads) {
        VerifyReport rep;
        {
          py::gil_scoped_release release;
          rep = run_verify(c, options(seed, samples, threads));
        }
        return py::make_tuple(rep.passed, table_to_dict(rep.table));
      },
      py::arg("config"), py::arg("seed") = py::none(), py::arg("samples") = py::none(),
      py::arg("threads") = 1,
      "Closed forms against Monte Carlo oracles; returns (passed, table).");
}
