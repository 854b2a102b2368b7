#include <cmath>
#include <limits>
#include <optional>

#include <pybind11/eigen.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "secidx/error.hpp"
#include "secidx/index.hpp"
#include "secidx/io.hpp"
#include "secidx/linking.hpp"
#include "secidx/model.hpp"
#include "secidx/oracle.hpp"

namespace py = pybind11;
using namespace secidx;

namespace {

std::vector<VertexId> resolve(const AttackGraph& graph, const std::vector<std::string>& names) {
  std::vector<VertexId> out;
  out.reserve(names.size());
  for (const auto& n : names) {
    const auto v = graph.find(n);
    if (!v) throw Error(ErrorKind::kUnknownVertex, n, "unknown vertex '" + n + "'");
    out.push_back(*v);
  }
  return out;
}

std::vector<VertexId> targets_or_sensors(const AttackGraph& graph,
                                         const std::optional<std::vector<std::string>>& targets) {
  return targets ? resolve(graph, *targets) : graph.targets();
}

std::vector<std::string> names(const AttackGraph& graph, const std::vector<VertexId>& vs) {
  std::vector<std::string> out;
  for (const auto& v : vs) out.push_back(graph.name(v));
  return out;
}

py::object index_object(const IndexValue& v) {
  if (v.is_infinite()) return py::float_(std::numeric_limits<double>::infinity());
  return py::int_(v.value());
}

IndexOptions index_options(std::size_t cap, unsigned threads) {
  IndexOptions o;
  o.enumeration_cap = cap;
  o.threads = threads;
  return o;
}

RankProbe probe_for(std::uint64_t seed, std::size_t trials, std::size_t freqs, double tol) {
  return make_probe(seed, freqs, tol, trials);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Structural actuator security index of structured LTI systems";

  static py::exception<Error> error_type(m, "SecidxError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      auto cls = py::reinterpret_borrow<py::object>(error_type.ptr());
      py::object exc = cls(std::string(to_string(e.kind())) + ": " + e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      exc.attr("subject") = e.subject();
      PyErr_SetObject(error_type.ptr(), exc.ptr());
    }
  });

  py::class_<StructuredSystem>(m, "StructuredSystem")
      .def_static("from_json", &parse_system, py::arg("text"))
      .def_static("load", &load_system, py::arg("path"))
      .def("to_json", [](const StructuredSystem& s) { return emit_system(s); })
      .def_property_readonly("states", &StructuredSystem::states)
      .def_property_readonly("actuators", &StructuredSystem::actuators)
      .def_property_readonly("sensors",
                             [](const StructuredSystem& s) {
                               std::vector<std::pair<std::string, bool>> out;
                               for (const auto& d : s.sensors()) out.emplace_back(d.name, d.is_protected);
                               return out;
                             })
      .def("with_protected", &StructuredSystem::with_protected, py::arg("sensor"))
      .def(py::self == py::self);

  py::class_<AttackGraph>(m, "AttackGraph")
      .def_property_readonly("vertex_count", &AttackGraph::vertex_count)
      .def_property_readonly("edge_count", &AttackGraph::edge_count)
      .def_property_readonly("attack_set",
                             [](const AttackGraph& g) { return names(g, g.attack_set()); })
      .def_property_readonly("targets", [](const AttackGraph& g) { return names(g, g.targets()); })
      .def_property_readonly("edges", [](const AttackGraph& g) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& [a, b] : g.edges()) out.emplace_back(g.name(a), g.name(b));
        return out;
      });

  m.def("build_attack_graph", &build_attack_graph, py::arg("system"));

  m.def(
      "validate_assumptions",
      [](const AttackGraph& g) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& v : validate_assumptions(g)) {
          out.emplace_back(g.name(v.vertex), std::string(to_string(v.kind)));
        }
        return out;
      },
      py::arg("graph"));

  m.def(
      "max_linking_size",
      [](const AttackGraph& g, const std::vector<std::string>& sources,
         const std::optional<std::vector<std::string>>& targets) {
        return max_linking_size(g, resolve(g, sources), targets_or_sensors(g, targets));
      },
      py::arg("graph"), py::arg("sources"), py::arg("targets") = py::none());

  m.def(
      "find_max_linking",
      [](const AttackGraph& g, const std::vector<std::string>& sources,
         const std::optional<std::vector<std::string>>& targets) {
        std::vector<std::vector<std::string>> out;
        for (const auto& path :
             find_max_linking(g, resolve(g, sources), targets_or_sensors(g, targets)).paths) {
          out.push_back(names(g, path));
        }
        return out;
      },
      py::arg("graph"), py::arg("sources"), py::arg("targets") = py::none());

  m.def(
      "saturated_by_all_max_linkings",
      [](const AttackGraph& g, const std::vector<std::string>& subset, const std::string& component) {
        return saturated_by_all_max_linkings(g, resolve(g, subset), resolve(g, {component})[0]);
      },
      py::arg("graph"), py::arg("attack_subset"), py::arg("component"));

  m.def(
      "security_index",
      [](const AttackGraph& g, const std::string& component, std::size_t cap, unsigned threads) {
        const auto r = security_index(g, resolve(g, {component})[0], index_options(cap, threads));
        py::dict out;
        out["component"] = g.name(r.component);
        out["index"] = index_object(r.index);
        out["witness"] = r.index.is_finite() ? py::object(py::cast(names(g, r.witness))) : py::none();
        out["subsets_examined"] = r.subsets_examined;
        return out;
      },
      py::arg("graph"), py::arg("component"), py::arg("cap") = 20, py::arg("threads") = 1);

  m.def(
      "all_indices",
      [](const AttackGraph& g, std::size_t cap, unsigned threads) {
        py::dict out;
        for (const auto& entry : all_indices(g, index_options(cap, threads)).entries) {
          if (!entry.result) throw Error(ErrorKind::kCapExceeded, g.name(entry.component), entry.error);
          out[py::str(g.name(entry.component))] = index_object(entry.result->index);
        }
        return out;
      },
      py::arg("graph"), py::arg("cap") = 20, py::arg("threads") = 1);

  m.def(
      "index_report",
      [](const AttackGraph& g, std::size_t cap, unsigned threads) {
        return emit_report(all_indices(g, index_options(cap, threads)), g);
      },
      py::arg("graph"), py::arg("cap") = 20, py::arg("threads") = 1,
      "Report document (JSON text) for every attackable component.");

  m.def("is_generically_left_invertible", &is_generically_left_invertible, py::arg("graph"));

  m.def(
      "export_dot",
      [](const AttackGraph& g, const std::optional<std::vector<std::string>>& highlight_sources,
         const std::optional<std::vector<std::string>>& targets) {
        std::optional<Linking> highlight;
        if (highlight_sources) {
          highlight = find_max_linking(g, resolve(g, *highlight_sources), targets_or_sensors(g, targets));
        }
        return export_dot(g, highlight);
      },
      py::arg("graph"), py::arg("highlight_sources") = py::none(), py::arg("targets") = py::none());

  m.def(
      "sample_realization",
      [](const StructuredSystem& s, std::uint64_t seed, double low, double high) {
        const auto r = sample_realization(s, seed, low, high);
        py::dict out;
        out["W"] = r.W;
        out["B_a"] = r.B_a;
        out["C"] = r.C;
        out["D_a"] = r.D_a;
        out["seed"] = r.seed;
        return out;
      },
      py::arg("system"), py::arg("seed"), py::arg("low") = 0.5, py::arg("high") = 1.5);

  m.def(
      "generic_normal_rank",
      [](const StructuredSystem& s, const std::vector<std::string>& columns, std::uint64_t seed,
         std::size_t trials, std::size_t freqs, double tol) {
        const auto g = build_attack_graph(s);
        return generic_normal_rank(s, resolve(g, columns), probe_for(seed, trials, freqs, tol));
      },
      py::arg("system"), py::arg("columns"), py::arg("seed") = 1, py::arg("trials") = 3,
      py::arg("freqs") = 3, py::arg("tol") = 1e-9);

  m.def(
      "numeric_security_index",
      [](const StructuredSystem& s, const std::string& component, std::uint64_t seed,
         std::size_t freqs, double tol, std::size_t cap) {
        const auto g = build_attack_graph(s);
        const auto r = sample_realization(s, seed);
        return index_object(
            numeric_security_index(r, resolve(g, {component})[0], probe_for(seed, 1, freqs, tol), cap));
      },
      py::arg("system"), py::arg("component"), py::arg("seed") = 1, py::arg("freqs") = 3,
      py::arg("tol") = 1e-9, py::arg("cap") = 20);
}
