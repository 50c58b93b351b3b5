#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "meshbcast/experiment.hpp"
#include "meshbcast/schedule_io.hpp"

namespace py = pybind11;
using namespace meshbcast;

namespace {

std::vector<std::pair<int, int>> edge_list(const MeshGraph& g) {
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.n; ++u)
    for (int v : g.adj[u])
      if (u < v) edges.emplace_back(u, v);
  return edges;
}

std::vector<std::string> class_names(const Sgst& s) {
  std::vector<std::string> out;
  out.reserve(s.class_of.size());
  for (NodeClass c : s.class_of) out.emplace_back(node_class_name(c));
  return out;
}

py::dict row_dict(const SummaryRow& r) {
  py::dict d;
  d["trial"] = r.trial;
  d["protocol"] = r.protocol;
  d["n"] = r.n;
  d["D"] = r.diameter;
  d["p"] = r.p;
  d["x"] = r.x;
  d["k"] = r.k;
  d["completion_round"] = r.completion_round;
  d["success"] = r.success;
  d["wall_time_ms"] = r.wall_time_ms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Broadcast scheduling and round-synchronous radio simulation for "
            "known-topology wireless mesh networks";

  py::register_exception<GraphError>(m, "GraphError");
  py::register_exception<SgstError>(m, "TreeError");
  py::register_exception<SimError>(m, "SimError");
  py::register_exception<ScheduleError>(m, "ScheduleError");

  py::class_<MeshGraph>(m, "MeshGraph")
      .def_readonly("n", &MeshGraph::n)
      .def_property_readonly("edges", &edge_list)
      .def("neighbors",
           [](const MeshGraph& g, int v) {
             if (v < 0 || v >= g.n) throw py::index_error("node out of range");
             return g.adj[v];
           })
      .def("edge_count", &MeshGraph::edge_count)
      .def("max_degree", &MeshGraph::max_degree)
      .def("has_edge", &MeshGraph::has_edge)
      .def("__repr__", [](const MeshGraph& g) {
        return "MeshGraph(n=" + std::to_string(g.n) +
               ", m=" + std::to_string(g.edge_count()) + ")";
      });

  m.def("parse_graph", [](const std::string& text) { return parse_graph(text); },
        py::arg("text"), "Parse the \"n m\" edge-list text format.");
  m.def("format_graph", &format_graph, py::arg("graph"));
  m.def(
      "generate_graph",
      [](const std::string& spec, std::uint64_t seed) { return generate_graph(spec, seed); },
      py::arg("spec"), py::arg("seed") = 1,
      "Build a topology from a spec such as grid(4,4) or expander(8,4).");
  m.def("diameter", &diameter, py::arg("graph"));
  m.def(
      "bfs_layers",
      [](const MeshGraph& g, int root) {
        if (root < 0 || root >= g.n) throw py::index_error("root out of range");
        return bfs_layering(g, root).layers;
      },
      py::arg("graph"), py::arg("root") = 0);

  py::class_<Sgst>(m, "ScheduleTree")
      .def_readonly("source", &Sgst::source)
      .def_readonly("x", &Sgst::x)
      .def_property_readonly("parent", [](const Sgst& s) { return s.tree.parent; })
      .def_property_readonly("layer", [](const Sgst& s) { return s.layering.layer_of; })
      .def_property_readonly("rank2", [](const Sgst& s) { return s.tree.rank2; })
      .def_property_readonly("rankx", [](const Sgst& s) { return s.tree.rankx; })
      .def_property_readonly("classes", &class_names)
      .def("__repr__", [](const Sgst& s) {
        return "ScheduleTree(n=" + std::to_string(s.tree.parent.size()) +
               ", x=" + std::to_string(s.x) + ")";
      });

  m.def(
      "build_tree",
      [](const MeshGraph& g, int source, int x) {
        return build_sgst(g, source, x > 0 ? x : default_x(g.n));
      },
      py::arg("graph"), py::arg("source") = 0, py::arg("x") = 0,
      "Build the scheduling spanning tree; x=0 picks max(2, ceil(log2 n)).");
  m.def(
      "verify_tree",
      [](const MeshGraph& g, const Sgst& s) { return verify_sgst(g, s).ok(); },
      py::arg("graph"), py::arg("tree"));

  m.def(
      "run",
      [](const MeshGraph& g, const std::string& protocol, double p, int x, int k,
         int trials, std::uint64_t seed, int source, std::int64_t max_rounds,
         double delta, bool events, bool timing) {
        ExperimentConfig ec;
        ec.protocol = protocol;
        ec.source = source;
        ec.trials = trials;
        ec.measure_time = timing;
        ec.sim.p = p;
        ec.sim.x = x;
        ec.sim.k = k;
        ec.sim.seed = seed;
        ec.sim.max_rounds = max_rounds;
        ec.sim.delta = delta;
        ec.sim.record_events = events;
        ExperimentResult res = run_experiment(g, ec);
        py::list rows;
        for (const auto& r : res.rows) rows.append(row_dict(r));
        py::dict out;
        out["rows"] = rows;
        out["summary_csv"] = summary_csv(res.rows);
        out["events_csv"] = events_csv(res.traces);
        out["x"] = res.x_used;
        out["D"] = res.diameter;
        return out;
      },
      py::arg("graph"), py::arg("protocol"), py::arg("p") = 0.0, py::arg("x") = 0,
      py::arg("k") = 1, py::arg("trials") = 1, py::arg("seed") = 1,
      py::arg("source") = 0, py::arg("max_rounds") = 0, py::arg("delta") = 0.1,
      py::arg("events") = false, py::arg("timing") = false,
      "Run repeated trials of decay, faultless, robust, or multi.");

  m.def(
      "export_schedule",
      [](const MeshGraph& g, const Sgst& tree, const std::string& protocol) {
        SimConfig cfg;
        return render_schedule(make_schedule_document(g, tree, protocol, cfg));
      },
      py::arg("graph"), py::arg("tree"), py::arg("protocol") = "faultless",
      "Render the deterministic slot structure as JSON.");
  m.def(
      "reexport_schedule",
      [](const std::string& text, const MeshGraph& g) {
        return render_schedule(parse_schedule(text, g));
      },
      py::arg("text"), py::arg("graph"),
      "Parse a schedule document and render it again (validation round trip).");

  m.def(
      "sweep",
      [](const MeshGraph& g, const std::vector<std::string>& protocols,
         const std::vector<double>& ps, const std::vector<int>& xs,
         const std::vector<int>& ks, int trials, std::uint64_t seed, int source) {
        SweepConfig sc;
        sc.protocols = protocols;
        sc.ps = ps;
        sc.xs = xs;
        sc.ks = ks;
        sc.trials = trials;
        sc.source = source;
        sc.sim.seed = seed;
        return sweep_csv(run_sweep(g, sc));
      },
      py::arg("graph"), py::arg("protocols"), py::arg("ps"),
      py::arg("xs") = std::vector<int>{0}, py::arg("ks") = std::vector<int>{1},
      py::arg("trials") = 1, py::arg("seed") = 1, py::arg("source") = 0,
      "Cross-product parameter sweep; returns the aggregate CSV.");
}
