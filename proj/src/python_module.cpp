#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "ualg/cli.hpp"
#include "ualg/congruence.hpp"
#include "ualg/corpus.hpp"
#include "ualg/witness.hpp"

namespace py = pybind11;
using namespace ualg;

namespace {

  Registry const& builtin() {
    static Registry const reg = load_builtin_corpus();
    return reg;
  }

  // Errors reach Python as ValueError prefixed with their kind.
  void translate(std::exception_ptr p) {
    try {
      if (p) {
        std::rethrow_exception(p);
      }
    } catch (Error const& e) {
      PyErr_SetString(PyExc_ValueError, (std::string(e.kind()) + ": " + e.what()).c_str());
    }
  }

  // Algebras are immutable and shared; Python holds one by handle.
  struct PyAlgebra {
    AlgebraPtr ptr;
  };

  std::vector<PyAlgebra> handles(std::vector<AlgebraPtr> const& as) {
    std::vector<PyAlgebra> out;
    for (auto const& a : as) {
      out.push_back({a});
    }
    return out;
  }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-model workbench for universal algebra";
  py::register_exception_translator(translate);

  m.def(
      "run",
      [](std::vector<std::string> const& args) {
        std::ostringstream out, err;
        int                code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the ualg front end; returns (exit_code, stdout, stderr).");

  py::class_<PyAlgebra>(m, "Algebra")
      .def_property_readonly("name", [](PyAlgebra const& h) { return h.ptr->name(); })
      .def_property_readonly("size", [](PyAlgebra const& h) { return h.ptr->size(); })
      .def_property_readonly("theory", [](PyAlgebra const& h) { return h.ptr->theory()->name; })
      .def_property_readonly("symbols",
                             [](PyAlgebra const& h) {
                               std::vector<std::pair<std::string, std::size_t>> out;
                               for (auto const& op : h.ptr->signature().ops()) {
                                 out.emplace_back(op.name, op.arity);
                               }
                               return out;
                             })
      .def("apply",
           [](PyAlgebra const& h, std::string const& symbol, std::vector<Element> const& args) {
             auto const& a  = *h.ptr;
             auto const  op = a.signature().index_of(symbol);
             if (args.size() != a.signature()[op].arity) {
               throw ArityMismatchError("'" + symbol + "' takes " + std::to_string(a.signature()[op].arity)
                                        + " argument(s)");
             }
             for (auto x : args) {
               if (x >= a.size()) {
                 throw ShapeError("element " + std::to_string(x) + " outside the carrier");
               }
             }
             return a.apply(op, args);
           })
      .def("satisfies_axioms", [](PyAlgebra const& h) { return is_algebra_of(*h.ptr).all_hold(); })
      .def("__repr__", [](PyAlgebra const& h) {
        auto const& a = *h.ptr;
        return "<Algebra " + a.name() + " : " + a.theory()->name + ", order " + std::to_string(a.size()) + ">";
      });

  m.def("algebra", [](std::string const& name) { return PyAlgebra{builtin().algebra(name)}; }, py::arg("name"),
        "A named algebra of the built-in corpus.");
  m.def("algebras", [] { return handles(builtin().algebras()); });

  m.def(
      "congruences",
      [](std::string const& name) {
        std::vector<std::vector<std::vector<Element>>> out;
        for (auto const& c : enumerate_congruences(*builtin().algebra(name))) {
          out.push_back(c.classes());
        }
        return out;
      },
      py::arg("algebra"), "Every congruence, as a list of blocks.");

  m.def(
      "maltsev",
      [](std::string const& name) -> py::object {
        auto s = has_maltsev_term_operation(builtin().algebra(name));
        switch (s.decision) {
          case Decision::yes:
            return py::str(to_string(*s.term));
          case Decision::no:
            return py::bool_(false);
          default:
            return py::none();
        }
      },
      py::arg("algebra"), "A Maltsev term as text, False if none exists, None if the search gave up.");

  m.def("invariant_sweep", [] {
    std::vector<py::tuple> out;
    for (auto const& item : invariant_sweep(builtin())) {
      out.push_back(py::make_tuple(item.kind, item.name, item.verdict.holds, item.verdict.detail));
    }
    return out;
  });
}
