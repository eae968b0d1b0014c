// Python bindings for the core library.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rauzy/primitivize.hpp"
#include "rauzy/protocol.hpp"
#include "rauzy/rauzy_graph.hpp"
#include "rauzy/spec_io.hpp"

namespace py = pybind11;
using namespace rauzy;

namespace {

std::vector<std::string> encoded(const Alphabet& a, const std::vector<Word>& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(a.encode(w));
  return out;
}

std::vector<std::string> alphabet_symbols(const Alphabet& a) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a.encode_letter(i));
  return out;
}

Protocol evolve(FactorOracle& oracle, std::size_t steps, std::optional<std::size_t> k, bool check) {
  const std::size_t order = k ? *k : choose_initial_k(oracle);
  ProtocolOptions options;
  options.max_steps = steps;
  options.check_properties = check;
  return run(oracle, scheme_from_rauzy_graph(build_rauzy_graph(oracle, order), oracle), options);
}

}  // namespace

PYBIND11_MODULE(_rauzy, m) {
  m.doc() = "Rauzy graphs and schemes for morphic words";

  // RauzyError(message, kind); kind is the ErrorKind name.
  static py::handle error = py::exception<Error>(m, "RauzyError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetObject(error.ptr(), py::make_tuple(e.what(), std::string(to_string(e.kind()))).ptr());
    }
  });

  py::class_<MorphicWordSpec>(m, "Spec")
      .def_property_readonly("alphabet", [](const MorphicWordSpec& s) { return alphabet_symbols(s.alphabet()); })
      .def_readwrite("prefix_budget", &MorphicWordSpec::prefix_budget)
      .def("prefix", [](const MorphicWordSpec& s, std::size_t n) { return s.alphabet().encode(prefix(s, n).substr(0, n)); })
      .def("to_json", &dump_spec);
  m.def("parse_spec", &parse_spec, py::arg("json_text"));
  m.def("load_spec", &load_spec, py::arg("path"));

  py::class_<FactorOracle>(m, "Oracle")
      .def(py::init([](const MorphicWordSpec& s) { return FactorOracle(s); }), py::arg("spec"))
      .def_property_readonly("alphabet", [](const FactorOracle& o) { return alphabet_symbols(o.alphabet()); })
      .def("complexity", &FactorOracle::complexity, py::arg("n"))
      .def("first_difference", &FactorOracle::first_difference, py::arg("n"))
      .def("factors", [](FactorOracle& o, std::size_t n) { return encoded(o.alphabet(), o.factors(n)); }, py::arg("n"))
      .def("is_factor", [](FactorOracle& o, const std::string& u) { return o.is_factor(o.alphabet().decode(u)); })
      .def("initial_k", [](FactorOracle& o, std::size_t k_max) { return choose_initial_k(o, k_max); },
           py::arg("k_max") = 64);

  py::class_<SubstitutionSystem>(m, "SubstitutionSystem")
      .def_readonly("anchor", &SubstitutionSystem::anchor)
      .def_readonly("period", &SubstitutionSystem::period)
      .def_property_readonly("growth_rate", [](const SubstitutionSystem& s) { return growth_rate(s.phi); })
      .def("to_json", [](const SubstitutionSystem& s) { return dump_spec(s.spec()); });

  py::class_<Protocol>(m, "Protocol")
      .def_property_readonly("steps", [](const Protocol& p) { return p.entries.size(); })
      .def_property_readonly("states",
                             [](const Protocol& p) {
                               std::vector<std::string> out;
                               for (const auto& e : p.entries) out.push_back(e.state());
                               return out;
                             })
      .def_property_readonly("scales",
                             [](const Protocol& p) {
                               std::vector<std::size_t> out;
                               for (const auto& e : p.entries) out.push_back(e.scale);
                               return out;
                             })
      .def_property_readonly("failure",
                             [](const Protocol& p) -> py::object {
                               if (!p.failure) return py::none();
                               return py::make_tuple(std::string(to_string(p.failure->kind)), p.failure->step,
                                                     p.failure->message);
                             })
      .def("to_jsonl", &Protocol::to_jsonl)
      .def("detect_period",
           [](const Protocol& p) {
             const Period found = detect_period(p);
             return py::make_tuple(found.preperiod, found.period);
           })
      .def("light_replay_mismatch", &light_replay_mismatch)
      .def("extract", [](const Protocol& p, std::size_t anchor, std::size_t period, const FactorOracle& o) {
        return extract_substitution(p, anchor, period, o.alphabet());
      }, py::arg("anchor"), py::arg("period"), py::arg("oracle"));

  m.def("evolve", &evolve, py::arg("oracle"), py::arg("steps") = 20, py::arg("k") = std::nullopt,
        py::arg("check") = false);

  m.def("verify_language_equality",
        [](FactorOracle& o, const SubstitutionSystem& s, std::size_t max_length) {
          const auto cmp = verify_language_equality(o, s, max_length);
          py::dict out;
          out["equal"] = cmp.equal;
          out["closure_mode"] = cmp.closure_mode;
          out["first_difference"] = cmp.first_difference ? py::cast(*cmp.first_difference) : py::none();
          return out;
        },
        py::arg("oracle"), py::arg("system"), py::arg("max_length"));

  m.def("primitivize",
        [](const MorphicWordSpec& s) {
          const auto r = primitivize(s);
          return py::make_tuple(r.report(s), r.system.spec(s.prefix_budget));
        },
        py::arg("spec"));

  m.def("check_ur",
        [](const MorphicWordSpec& s) -> py::tuple {
          const auto v = check_uniform_recurrence(s);
          if (const auto* e = std::get_if<UrEvidence>(&v)) return py::make_tuple("UR_Evidence", e->max_ratio);
          if (const auto* n = std::get_if<NotUr>(&v)) return py::make_tuple("NotUR", n->reason);
          return py::make_tuple("Unknown", std::get<UrUnknown>(v).reason);
        },
        py::arg("spec"));
}
