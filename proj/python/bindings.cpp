#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aoo/cli/report.hpp"
#include "aoo/frontend/parser.hpp"
#include "aoo/frontend/printer.hpp"
#include "aoo/support/error.hpp"

namespace py = pybind11;

namespace {

aoo::Compiled build(const std::string& source) { return aoo::compile(source); }

std::string infer_json(const std::string& source) { return aoo::infer_report(*build(source).flat).dump(); }

std::string safety_json(const std::string& source) { return aoo::safety_report(*build(source).flat).dump(); }

std::string bound_json(const std::string& source, std::vector<unsigned long> sizes, bool per_loop,
                       std::uint64_t budget) {
  aoo::Program p = aoo::parse(source);
  aoo::Compiled c = aoo::compile(p);
  aoo::BoundRequest req;
  req.validate = std::move(sizes);
  req.per_loop = per_loop;
  req.budget = budget;
  py::gil_scoped_release release;
  return aoo::bound_report(p, *c.flat, req).dump();
}

std::string run_json(const std::string& source, std::uint64_t budget) {
  aoo::Compiled c = build(source);
  py::gil_scoped_release release;
  return aoo::run_report(*c.flat, budget).dump();
}

std::string verdicts_json(const std::string& source) { return aoo::verdicts(*build(source).flat).dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tier-based complexity analysis: parsing, flattening, tier inference, safety and bounds";

  py::register_exception<aoo::Error>(m, "AnalysisError", PyExc_ValueError);

  m.def("parse", [](const std::string& source) { return aoo::print(aoo::parse(source)); }, py::arg("source"),
        "Parse a program and return it pretty-printed.");
  m.def("flatten", [](const std::string& source) { return aoo::print(build(source).flat->program()); },
        py::arg("source"), "Return the flattened program as source text.");
  m.def("infer_json", &infer_json, py::arg("source"));
  m.def("safety_json", &safety_json, py::arg("source"));
  m.def("bound_json", &bound_json, py::arg("source"), py::arg("validate") = std::vector<unsigned long>{},
        py::arg("per_loop") = false, py::arg("budget") = 10'000'000ULL);
  m.def("run_json", &run_json, py::arg("source"), py::arg("budget") = 10'000'000ULL);
  m.def("verdicts_json", &verdicts_json, py::arg("source"));
  m.attr("SCHEMA") = aoo::kSchema;
}
