#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "frobreal/aut.hpp"
#include "frobreal/cli.hpp"
#include "frobreal/errors.hpp"
#include "frobreal/manifold.hpp"
#include "frobreal/serialize.hpp"

namespace py = pybind11;
using namespace frobreal;

namespace {

std::uint64_t budget_or_default(const std::optional<std::uint64_t>& b) { return b ? *b : default_budget(); }

FrobeniusStructure build(const std::string& spec, const std::string& field) {
  return build_structure(parse_spec(spec), parse_field(field));
}

std::uint32_t prime_q(std::uint32_t q) {
  if (!is_prime(q)) throw std::invalid_argument(std::to_string(q) + " is not prime");
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact Frobenius structures on cohomology rings and automorphism coset counts";

  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def("canonical_spec", [](const std::string& text) { return parse_spec(text).to_string(); }, py::arg("text"));
  m.def("top_degree", [](const std::string& text) { return parse_spec(text).top_degree(); }, py::arg("text"));

  py::class_<FrobeniusStructure>(m, "Structure")
      .def_property_readonly("dim", [](const FrobeniusStructure& s) { return s.space()->dim(); })
      .def_property_readonly("degree_m", &FrobeniusStructure::coproduct_degree)
      .def_property_readonly("field", [](const FrobeniusStructure& s) { return s.field().to_string(); })
      .def_property_readonly("basis",
                             [](const FrobeniusStructure& s) {
                               std::vector<std::pair<std::string, int>> out;
                               for (const auto& b : s.space()->basis()) out.emplace_back(b.label, b.degree);
                               return out;
                             })
      .def("to_json", [](const FrobeniusStructure& s) { return dump(to_json(s)); })
      .def("check_axioms_json", [](const FrobeniusStructure& s) { return dump(to_json(check_axioms(s))); })
      .def("euler_characteristic", [](const FrobeniusStructure& s) { return euler_characteristic(*s.space()); })
      .def(
          "handle_check",
          [](const FrobeniusStructure& s) {
            return handle_element_check(s, euler_characteristic(*s.space()), top_class(s)).pass;
          })
      .def("__eq__", [](const FrobeniusStructure& a, const FrobeniusStructure& b) { return structure_equal(a, b); });

  m.def("build_structure", &build, py::arg("spec"), py::arg("field") = "rationals");
  m.def("structure_from_json", [](const std::string& text) { return structure_from_json(parse_json(text)); },
        py::arg("text"));

  m.def(
      "graded_linear_order",
      [](const std::string& spec, std::uint32_t q) {
        auto s = build(spec, "q=" + std::to_string(prime_q(q)));
        return graded_linear_order(*s.space(), q);
      },
      py::arg("spec"), py::arg("q"));

  m.def(
      "census",
      [](const std::string& spec, std::uint32_t q, std::optional<std::uint64_t> budget) {
        auto s = build(spec, "q=" + std::to_string(prime_q(q)));
        auto c = automorphism_census(s, budget_or_default(budget));
        py::dict d;
        d["aut_alg"] = c.algebra_count;
        d["aut_frob"] = c.frobenius_count;
        d["candidates"] = c.candidates;
        d["witness"] = c.witness ? py::cast(c.witness->to_string()) : py::none();
        return d;
      },
      py::arg("spec"), py::arg("q"), py::arg("budget") = py::none());

  m.def(
      "algebra_automorphisms",
      [](const std::string& spec, std::uint32_t q, std::optional<std::uint64_t> budget) {
        auto s = build(spec, "q=" + std::to_string(prime_q(q)));
        std::vector<std::vector<std::vector<std::uint32_t>>> out;
        for (const auto& g : enumerate_algebra_automorphisms(s, budget_or_default(budget)))
          out.push_back(to_json(g).get<std::vector<std::vector<std::uint32_t>>>());
        return out;
      },
      py::arg("spec"), py::arg("q"), py::arg("budget") = py::none());

  m.def(
      "orbit",
      [](const std::string& spec, std::uint32_t q, const std::string& target, std::optional<std::uint64_t> budget) {
        if (target != "algebra" && target != "full") throw std::invalid_argument("target must be algebra or full");
        auto s = build(spec, "q=" + std::to_string(prime_q(q)));
        auto o = orbit_of_structure(s, target == "algebra" ? OrbitTarget::algebra : OrbitTarget::full,
                                    budget_or_default(budget));
        return dump(to_json(o));
      },
      py::arg("spec"), py::arg("q"), py::arg("target") = "algebra", py::arg("budget") = py::none());

  m.def(
      "report_json",
      [](const std::string& spec, std::uint32_t q, std::optional<std::uint64_t> budget) {
        return dump(to_json(realization_count_report(parse_spec(spec), prime_q(q), budget_or_default(budget))));
      },
      py::arg("spec"), py::arg("q"), py::arg("budget") = py::none());

  m.def(
      "report_table",
      [](const std::string& spec, std::uint32_t q, std::optional<std::uint64_t> budget) {
        return report_table(realization_count_report(parse_spec(spec), prime_q(q), budget_or_default(budget)));
      },
      py::arg("spec"), py::arg("q"), py::arg("budget") = py::none());

  m.def(
      "run",
      [](const std::string& mode, const std::string& spec, const std::string& field, bool json,
         std::optional<std::uint64_t> budget) {
        static const std::map<std::string, Mode> modes = {{"build", Mode::build},
                                                         {"check", Mode::check},
                                                         {"aut", Mode::aut},
                                                         {"orbit", Mode::orbit},
                                                         {"report", Mode::report}};
        auto it = modes.find(mode);
        if (it == modes.end()) throw std::invalid_argument("unknown mode '" + mode + "'");
        RunConfig c;
        c.mode = it->second;
        c.spec = spec;
        c.field = field;
        c.json = json;
        c.budget = budget;
        RunResult r;
        {
          py::gil_scoped_release release;
          r = frobreal::run(c);
        }
        return py::make_tuple(r.status, r.output, r.error);
      },
      py::arg("mode"), py::arg("spec"), py::arg("field") = "rationals", py::arg("json") = false,
      py::arg("budget") = py::none());
}
