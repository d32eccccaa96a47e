#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "robustmc/checker_rctl.hpp"
#include "robustmc/checker_rctlstar.hpp"
#include "robustmc/formula.hpp"
#include "robustmc/kripke.hpp"
#include "robustmc/oracle.hpp"
#include "robustmc/truth.hpp"

namespace py = pybind11;

namespace {

rmc::Fragment fragment_from(const std::string& name) {
  if (name == "restricted") return rmc::Fragment::kRestricted;
  if (name == "full") return rmc::Fragment::kFull;
  if (name == "classical") return rmc::Fragment::kClassical;
  throw py::value_error("fragment must be 'restricted', 'full' or 'classical'");
}

rmc::TruthValue value_from(const std::string& text) {
  const auto b = rmc::TruthValue::parse(text);
  if (!b)
    throw py::value_error("invalid truth value '" + text +
                          "' (expected 0000, 0001, 0011, 0111 or 1111)");
  return *b;
}

bool use_restricted_engine(const std::string& engine,
                           const rmc::StateFormula& f) {
  if (engine == "rctl") return true;
  if (engine == "rctlstar") return false;
  if (engine != "auto")
    throw py::value_error("engine must be 'rctl', 'rctlstar' or 'auto'");
  return !rmc::fragment_violation(f, rmc::Fragment::kRestricted).has_value();
}

rmc::SatTable run_engine(const rmc::KripkeStructure& m,
                         const rmc::StateFormula& f,
                         const std::string& engine) {
  return use_restricted_engine(engine, f) ? rmc::compute_sat(m, f)
                                          : rmc::compute_sat_star(m, f);
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "five-valued model checking for branching-time requirements";

  // Malformed input is a ValueError, not a bare RuntimeError.
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const rmc::ParseError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const rmc::FragmentError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    } catch (const rmc::ModelError& e) {
      PyErr_SetString(PyExc_ValueError, e.what());
    }
  });

  py::class_<rmc::StateFormula>(mod, "Formula")
      .def_static(
          "parse",
          [](const std::string& text, const std::string& fragment) {
            return rmc::parse_state_formula(text, fragment_from(fragment));
          },
          py::arg("text"), py::arg("fragment") = "full")
      .def_property_readonly("text", &rmc::StateFormula::text)
      .def_property_readonly("size", &rmc::StateFormula::size)
      .def("__str__", &rmc::StateFormula::text)
      .def("__repr__", [](const rmc::StateFormula& f) {
        return "Formula(" + f.text() + ")";
      });

  py::class_<rmc::KripkeStructure>(mod, "Model")
      .def_static("parse",
                  [](const std::string& text) { return rmc::parse_model(text); },
                  py::arg("text"))
      .def_static("random", &rmc::random_structure, py::arg("n_states"),
                  py::arg("edge_density"), py::arg("n_props"), py::arg("seed"))
      .def_property_readonly("num_states", &rmc::KripkeStructure::num_states)
      .def_property_readonly("state_names",
                             &rmc::KripkeStructure::state_names)
      .def_property_readonly("prop_names", &rmc::KripkeStructure::prop_names)
      .def("to_text", &rmc::KripkeStructure::to_text)
      .def("validate", [](const rmc::KripkeStructure& m) {
        std::vector<std::pair<bool, std::string>> out;
        for (const rmc::ModelIssue& issue : m.validate())
          out.emplace_back(issue.is_error, issue.message);
        return out;
      });

  mod.def("truth_values", [] {
    std::vector<std::string> out;
    for (rmc::TruthValue v : rmc::TruthValue::all())
      out.push_back(v.to_string());
    return out;
  });

  mod.def(
      "check",
      [](const rmc::KripkeStructure& m, const rmc::StateFormula& f,
         const std::string& threshold, const std::string& engine) {
        const rmc::TruthValue b0 = value_from(threshold);
        const rmc::SatTable table = run_engine(m, f, engine);
        bool holds = true;
        rmc::TruthValue value = rmc::TruthValue::top();
        std::map<std::string, std::string> per_initial;
        m.initial_states().for_each([&](std::size_t s) {
          const rmc::TruthValue v = table.state_value(s);
          value = rmc::meet(value, v);
          if (v < b0) holds = false;
          per_initial[m.state_name(s)] = v.to_string();
        });
        py::dict out;
        out["holds"] = holds;
        out["value"] = value.to_string();
        out["initial"] = per_initial;
        return out;
      },
      py::arg("model"), py::arg("formula"), py::arg("threshold"),
      py::arg("engine") = "auto");

  mod.def(
      "values",
      [](const rmc::KripkeStructure& m, const rmc::StateFormula& f,
         const std::string& engine) {
        const rmc::SatTable table = run_engine(m, f, engine);
        std::vector<std::map<std::string, std::string>> rows;
        for (const rmc::StateFormula& g : table.subformulas())
          for (std::size_t s = 0; s < m.num_states(); ++s)
            rows.push_back({{"formula", g.text()},
                            {"state", m.state_name(s)},
                            {"value", table.state_value(g, s).to_string()}});
        return rows;
      },
      py::arg("model"), py::arg("formula"), py::arg("engine") = "auto");

  mod.def(
      "state_value",
      [](const rmc::KripkeStructure& m, const rmc::StateFormula& f,
         const std::string& state, const std::string& engine) {
        const auto s = m.state_index(state);
        if (!s) throw py::value_error("no state named '" + state + "'");
        return run_engine(m, f, engine).state_value(*s).to_string();
      },
      py::arg("model"), py::arg("formula"), py::arg("state"),
      py::arg("engine") = "auto");

  mod.def(
      "oracle_value",
      [](const rmc::KripkeStructure& m, const rmc::StateFormula& f,
         const std::string& state, std::size_t bound) {
        const auto s = m.state_index(state);
        if (!s) throw py::value_error("no state named '" + state + "'");
        return rmc::eval_state_bruteforce(m, *s, f, bound).to_string();
      },
      py::arg("model"), py::arg("formula"), py::arg("state"),
      py::arg("bound"));
}
