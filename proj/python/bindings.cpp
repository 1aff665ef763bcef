#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "dpres/cli.hpp"
#include "dpres/generators.hpp"
#include "dpres/io.hpp"
#include "dpres/lowerbound.hpp"
#include "dpres/preserver.hpp"
#include "dpres/shortest_paths.hpp"
#include "dpres/tiebreak.hpp"

namespace py = pybind11;
using namespace dpres;

namespace {

using PairList = std::vector<std::pair<NodeId, NodeId>>;

PairSet to_pairs(const Graph& g, const PairList& list) {
  std::vector<NodePair> pairs;
  for (const auto& [s, t] : list) pairs.push_back({s, t});
  return PairSet(g, std::move(pairs));
}

PairList from_pairs(const PairSet& pairs) {
  PairList out;
  for (const auto& p : pairs) out.emplace_back(p.source, p.target);
  return out;
}

Graph make_graph(NodeId n, bool directed, bool weighted, const std::vector<py::tuple>& edges) {
  std::vector<Edge> list;
  for (const auto& t : edges) {
    if (t.size() != 2 && t.size() != 3) throw py::value_error("edges are (u, v) or (u, v, w) tuples");
    Edge e{t[0].cast<NodeId>(), t[1].cast<NodeId>(), 1};
    if (t.size() == 3) e.w = t[2].cast<Weight>();
    list.push_back(e);
  }
  return Graph(n, directed, weighted, std::move(list));
}

py::dict preserver_dict(const Preserver& p) {
  py::dict d;
  d["subgraph"] = p.subgraph;
  std::map<std::pair<NodeId, NodeId>, std::pair<NodeId, NodeId>> prov;
  for (const auto& [e, pair] : p.provenance) prov[e] = {pair.source, pair.target};
  d["provenance"] = prov;
  return d;
}

py::dict obstacle_dict(const ObstacleInstance& inst) {
  py::dict d;
  d["graph"] = inst.graph;
  d["pairs"] = from_pairs(inst.demanded);
  d["scale"] = inst.scale;
  d["subset"] = inst.subset;
  d["layer"] = inst.layer;
  d["map_json"] = serialize_obstacle_map(inst);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distance preservers: constructions, certificates and lower-bound instances";

  py::register_exception<Error>(m, "DpresError", PyExc_ValueError);

  py::class_<Graph>(m, "Graph")
      .def(py::init(&make_graph), py::arg("n"), py::arg("directed") = false, py::arg("weighted") = false,
           py::arg("edges") = std::vector<py::tuple>{})
      .def_property_readonly("node_count", &Graph::node_count)
      .def_property_readonly("edge_count", &Graph::edge_count)
      .def_property_readonly("directed", &Graph::directed)
      .def_property_readonly("weighted", &Graph::weighted)
      .def_property_readonly("edges",
                             [](const Graph& g) {
                               std::vector<std::tuple<NodeId, NodeId, Weight>> out;
                               for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.w);
                               return out;
                             })
      .def("has_edge", &Graph::has_edge)
      .def("__repr__", [](const Graph& g) {
        std::ostringstream os;
        os << "<Graph n=" << g.node_count() << " m=" << g.edge_count() << (g.directed() ? " directed" : "")
           << (g.weighted() ? " weighted" : "") << ">";
        return os.str();
      });

  m.def("shortest_distance", [](const Graph& g, NodeId u, NodeId v) {
    g.check_node(u);
    g.check_node(v);
    return shortest_distance(g, u, v);
  });

  m.def(
      "build_dw_preserver",
      [](const Graph& g, const PairList& pairs) {
        auto dw = build_dw_preserver(g, to_pairs(g, pairs));
        auto d = preserver_dict(dw.preserver);
        d["group_size"] = dw.group_size;
        py::list groups;
        for (const auto& grp : dw.groups) {
          py::dict gd;
          gd["first_pair"] = grp.first_pair;
          gd["size"] = grp.size;
          gd["oriented_edges"] = grp.oriented_edges;
          gd["branching_triples"] = grp.branching_triples;
          groups.append(gd);
        }
        d["groups"] = groups;
        return d;
      },
      py::arg("graph"), py::arg("pairs"));

  m.def(
      "build_uu_preserver",
      [](const Graph& g, const PairList& pairs) {
        auto uu = build_uu_preserver(g, to_pairs(g, pairs));
        auto d = preserver_dict(uu.preserver);
        d["lifted_preserver"] = uu.lifted_preserver;
        d["matching_class_count"] = uu.partition.classes.size();
        d["leftover_branching"] = uu.partition.leftover_branching.size();
        return d;
      },
      py::arg("graph"), py::arg("pairs"));

  m.def(
      "verify_preserver",
      [](const Graph& g, const Graph& h, const PairList& pairs) {
        auto report = verify_preserver(g, h, to_pairs(g, pairs));
        PairList bad;
        for (const auto& v : report.distance_violations) bad.emplace_back(v.pair.source, v.pair.target);
        py::dict d;
        d["ok"] = report.ok();
        d["distance_violations"] = bad;
        d["foreign_edges"] = report.foreign_edges.size();
        return d;
      },
      py::arg("graph"), py::arg("subgraph"), py::arg("pairs"));

  m.def("count_branching_triples", &count_branching_triples);

  m.def(
      "consistent_paths",
      [](const Graph& g, const PairList& pairs) {
        std::map<std::pair<NodeId, NodeId>, std::vector<NodeId>> out;
        const auto scheme = consistent_scheme(g, to_pairs(g, pairs));
        for (const auto& [p, path] : scheme.entries())
          out[{p.source, p.target}] = path.nodes;
        return out;
      },
      py::arg("graph"), py::arg("pairs"));

  m.def(
      "random_instance",
      [](NodeId n, std::size_t m, std::size_t pair_count, bool directed, bool weighted, Weight max_weight,
         std::uint64_t seed) {
        auto g = random_connected_graph(n, m, directed, weighted, max_weight, seed);
        return py::make_tuple(g, from_pairs(random_pairs(g, pair_count, seed)));
      },
      py::arg("n"), py::arg("m"), py::arg("pair_count"), py::arg("directed") = false, py::arg("weighted") = false,
      py::arg("max_weight") = 10, py::arg("seed") = 1);

  m.def(
      "obstacle_instance",
      [](std::size_t middle_nodes, std::size_t degree, std::size_t inner_length, const std::string& mode) {
        if (mode != "weighted" && mode != "unweighted") throw py::value_error("mode is 'weighted' or 'unweighted'");
        const bool weighted = mode == "weighted";
        auto inst = obstacle_product(
            gen_outer(middle_nodes, degree, weighted),
            [&](NodeId, std::size_t d) { return gen_inner(d / 2, inner_length, !weighted); },
            weighted ? ObstacleMode::Weighted : ObstacleMode::Unweighted);
        auto d = obstacle_dict(inst);
        d["structure_findings"] = check_path_structure(inst).size();
        d["forced_edge_count"] = forced_edge_count(inst);
        return d;
      },
      py::arg("middle_nodes"), py::arg("degree"), py::arg("inner_length"), py::arg("mode") = "weighted");

  m.def("parse_graph", [](const std::string& text) { return parse_graph(text).graph; });
  m.def("serialize_graph", [](const Graph& g) { return serialize_graph(g); });

  m.def(
      "cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "dpres");
        std::ostringstream out, err;
        const int status = cli::dispatch(args, out, err);
        return py::make_tuple(status, out.str(), err.str());
      },
      py::arg("args"));
}
