#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kemst/errors.hpp"
#include "kemst/event_stability.hpp"
#include "kemst/generators.hpp"
#include "kemst/lipschitz.hpp"
#include "kemst/morph.hpp"
#include "kemst/scenario_io.hpp"
#include "kemst/trace_io.hpp"

namespace py = pybind11;
using namespace kemst;

namespace {

PointConfig to_config(const std::vector<std::vector<double>>& pts) { return PointConfig{pts}; }

std::vector<std::pair<int, int>> edge_pairs(const SpanningTree& t) {
  std::vector<std::pair<int, int>> out;
  for (const Edge& e : t.edges()) out.emplace_back(e.u, e.v);
  return out;
}

SpanningTree from_pairs(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<Edge> out;
  for (auto [u, v] : edges) out.push_back(make_edge(u, v));
  return {n, out};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Kinetic Euclidean minimum spanning tree stability simulator";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_TypeError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvalidMoveError>(m, "InvalidMoveError", PyExc_ValueError);
  py::register_exception<AuditFailure>(m, "AuditFailure", PyExc_RuntimeError);

  py::enum_<MorphMode>(m, "MorphMode").value("slide", MorphMode::slide).value("rotation", MorphMode::rotation);

  py::class_<KineticScenario>(m, "Scenario")
      .def_readwrite("k", &KineticScenario::k)
      .def_readwrite("K", &KineticScenario::K)
      .def_readwrite("label", &KineticScenario::label)
      .def_readwrite("morph_mode", &KineticScenario::morph_mode)
      .def_readonly("markers", &KineticScenario::markers)
      .def_property_readonly("n", &KineticScenario::size)
      .def_property_readonly("d", &KineticScenario::dimension)
      .def_property_readonly("horizon", &KineticScenario::horizon)
      .def("at", [](const KineticScenario& sc, double t) { return sc.at(t).positions; }, py::arg("t"))
      .def("to_json", &scenario_to_json)
      .def_static("from_json", &scenario_from_json, py::arg("text"))
      .def("__repr__", [](const KineticScenario& sc) {
        return "<Scenario " + sc.label + " n=" + std::to_string(sc.size()) + ">";
      });

  m.def("generator_names", &generator_names);
  m.def("generate", &make_generated, py::arg("name"), py::arg("params") = std::map<std::string, double>{});
  m.def("gen_chebyshev", &gen_chebyshev, py::arg("s"), py::arg("n"), py::arg("horizon") = 1.0);
  m.def("gen_appendix_rational", &gen_appendix_rational, py::arg("s"), py::arg("n"));
  m.def("gen_circle", &gen_circle, py::arg("n"), py::arg("e_len") = 0.01);
  m.def("gen_diamond", &gen_diamond, py::arg("per_side") = 6);
  m.def("gen_split", [](int n) { return gen_split(n); }, py::arg("n"));
  m.def("gen_stationary", &gen_stationary, py::arg("n"), py::arg("d"), py::arg("horizon"), py::arg("seed"));
  m.def("gen_random_polynomial", &gen_random_polynomial, py::arg("n"), py::arg("s"), py::arg("d"),
        py::arg("horizon"), py::arg("seed"), py::arg("full_range") = false);
  m.def("input_distance", &input_distance, py::arg("scenario"), py::arg("t"), py::arg("t_prime"));
  m.def("next_displacement_event", &next_displacement_event, py::arg("scenario"), py::arg("t_ref"), py::arg("k"),
        py::arg("grid") = 2048);

  m.def("emst", [](const std::vector<std::vector<double>>& pts) { return edge_pairs(emst(to_config(pts))); },
        py::arg("points"));
  m.def("emst_length", [](const std::vector<std::vector<double>>& pts) { return emst_length_prim(to_config(pts)); },
        py::arg("points"));
  m.def("tree_length",
        [](const std::vector<std::vector<double>>& pts, const std::vector<std::pair<int, int>>& edges) {
          return tree_length(to_config(pts), from_pairs(static_cast<int>(pts.size()), edges));
        },
        py::arg("points"), py::arg("edges"));
  m.def("spanning_tree_count", [](int n) { return enumerate_spanning_trees(n).size(); }, py::arg("n"));

  py::class_<EventTrace>(m, "EventTrace")
      .def_readonly("label", &EventTrace::label)
      .def_readonly("k", &EventTrace::k)
      .def_readonly("event_count", &EventTrace::event_count)
      .def_property_readonly("times", [](const EventTrace& t) {
        std::vector<double> out;
        for (const auto& r : t.records) out.push_back(r.time);
        return out;
      })
      .def_property_readonly("ratios", [](const EventTrace& t) {
        std::vector<double> out;
        for (const auto& r : t.records) out.push_back(r.ratio);
        return out;
      })
      .def("to_csv", &event_trace_csv);
  m.def("run_event_regime", &run_event_regime, py::arg("scenario"), py::arg("samples") = 201);

  py::class_<AuditReport>(m, "AuditReport")
      .def_readonly("max_slack", &AuditReport::max_slack)
      .def_readonly("max_ratio", &AuditReport::max_ratio)
      .def_readonly("allowance", &AuditReport::allowance);
  m.def("approximation_audit", &approximation_audit, py::arg("trace"), py::arg("scenario"), py::arg("l") = 1,
        py::arg("allowance_scale") = 1.0);

  py::class_<TopoTrace>(m, "TopoTrace")
      .def_readonly("label", &TopoTrace::label)
      .def_readonly("swap_count", &TopoTrace::swap_count)
      .def_readonly("fallback_count", &TopoTrace::fallback_count)
      .def_readonly("max_ratio", &TopoTrace::max_ratio)
      .def("to_csv", &topo_trace_csv);
  m.def("run_topo_regime", &run_topo_regime, py::arg("scenario"), py::arg("mode"), py::arg("samples") = 201);

  m.def("minimax_oracle_ratio",
        [](const KineticScenario& sc, MorphMode mode, int steps) { return minimax_flip_oracle(sc, mode, steps).ratio; },
        py::arg("scenario"), py::arg("mode"), py::arg("time_steps") = 201);

  py::class_<DiamondCertificate>(m, "DiamondCertificate")
      .def_readonly("emst_length", &DiamondCertificate::emst_length)
      .def_readonly("lower_bound", &DiamondCertificate::lower_bound)
      .def_readonly("witness_max", &DiamondCertificate::witness_max)
      .def_property_readonly("ratio", &DiamondCertificate::ratio);
  m.def("diamond_certificate", &diamond_certificate, py::arg("per_side") = 6);

  py::class_<LipschitzResult>(m, "LipschitzResult")
      .def_readonly("label", &LipschitzResult::label)
      .def_readonly("K", &LipschitzResult::K)
      .def_readonly("completed", &LipschitzResult::completed)
      .def_readonly("final_length", &LipschitzResult::final_length)
      .def_readonly("final_opt", &LipschitzResult::final_opt)
      .def_readonly("final_ratio", &LipschitzResult::final_ratio)
      .def_readonly("max_closed_form_gap", &LipschitzResult::max_closed_form_gap)
      .def("to_csv", &lipschitz_trace_csv);
  m.def("run_lipschitz_regime",
        [](const KineticScenario& sc, double K, int samples) { return run_lipschitz_regime(sc, K, samples); },
        py::arg("scenario"), py::arg("K"), py::arg("samples") = 101);
  m.def("completion_time", &completion_time, py::arg("x"), py::arg("K"), py::arg("t0"), py::arg("horizon") = 1.0);
  m.def("integrate", &integrate, py::arg("f"), py::arg("a"), py::arg("b"));
  m.attr("SPLIT_CONSTANT") = kSplitConstant;
}
