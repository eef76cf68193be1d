#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "treelab/canonical.hpp"
#include "treelab/embedding.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/errors.hpp"
#include "treelab/families.hpp"
#include "treelab/report.hpp"
#include "treelab/solvers.hpp"

namespace py = pybind11;
using namespace treelab;

namespace {

// Reports cross the boundary as JSON text; the package decodes them.
std::string dump(const nlohmann::json& j) { return j.dump(); }

SolverConfig config(std::size_t jobs) {
  SolverConfig c;
  c.jobs = jobs;
  return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<ParseError> parse_error(m, "ParseError", PyExc_ValueError);
  static py::exception<BudgetExceeded> budget_error(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      parse_error(e.what());
    } catch (const BudgetExceeded& e) {
      PyObject* bound = e.lower_bound() ? PyLong_FromSize_t(*e.lower_bound()) : Py_NewRef(Py_None);
      PyObject* args = Py_BuildValue("(sN)", e.what(), bound);
      PyErr_SetObject(budget_error.ptr(), args);
      Py_DECREF(args);
    }
  });

  m.def("normalize", [](const std::string& s) { return print_tree(parse_tree(s)); });
  m.def("size", [](const std::string& s) { return parse_tree(s).size(); });
  m.def("canonical", [](const std::string& s) { return canonical_code(parse_tree(s)).code; });
  m.def("isomorphic",
        [](const std::string& a, const std::string& b) { return are_isomorphic(parse_tree(a), parse_tree(b)); });
  m.def("enumerate", [](std::size_t n) {
    std::vector<std::string> out;
    for (const auto& t : enumerate_trees(n)) out.push_back(print_tree(t));
    return out;
  });
  m.def("find_minor", [](const std::string& s, const std::string& t) -> std::optional<std::string> {
    auto a = parse_tree(s);
    auto b = parse_tree(t);
    auto f = find_minor_embedding(a, b);
    if (!f) return std::nullopt;
    return dump(embedding_to_json(*f, a, b));
  });
  m.def(
      "lcs",
      [](const std::string& a, const std::string& b, bool all, std::size_t jobs) {
        auto t1 = parse_tree(a);
        auto t2 = parse_tree(b);
        py::gil_scoped_release release;
        return dump(lcs_to_json(largest_common_minor(t1, t2, all, config(jobs)), t1, t2, 0.0));
      },
      py::arg("t1"), py::arg("t2"), py::arg("all_witnesses") = false, py::arg("jobs") = 0);
  m.def(
      "scs",
      [](const std::string& a, const std::string& b, bool all, std::optional<std::size_t> max_size,
         std::size_t jobs) {
        auto t1 = parse_tree(a);
        auto t2 = parse_tree(b);
        py::gil_scoped_release release;
        return dump(scs_to_json(smallest_common_supertree(t1, t2, all, max_size, config(jobs)), t1, t2, 0.0));
      },
      py::arg("t1"), py::arg("t2"), py::arg("all_witnesses") = false, py::arg("max_size") = py::none(),
      py::arg("jobs") = 0);
  m.def(
      "verify",
      [](const std::string& p, const std::string& r, const std::string& s, std::size_t jobs) {
        auto tp = parse_tree(p);
        auto tr = parse_tree(r);
        auto ts = parse_tree(s);
        py::gil_scoped_release release;
        return dump(verification_to_json(verify_counterexample(tp, tr, ts, config(jobs))));
      },
      py::arg("p"), py::arg("r"), py::arg("s"), py::arg("jobs") = 0);
  m.def(
      "scan",
      [](std::size_t max_size, bool eq4, bool prop21, std::size_t jobs) {
        py::gil_scoped_release release;
        return dump(scan_to_json(scan(max_size, eq4, prop21, config(jobs))));
      },
      py::arg("max_size"), py::arg("eq4") = true, py::arg("prop21") = false, py::arg("jobs") = 0);
}
