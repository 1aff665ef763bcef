#include "dpres/preserver.hpp"

#include <algorithm>
#include <set>

#include "dpres/shortest_paths.hpp"

namespace dpres {

namespace {

EdgeKey key_of(const Graph& g, NodeId a, NodeId b) {
  if (!g.directed() && a > b) std::swap(a, b);
  return {a, b};
}

// Adds every edge of `nodes` to `edges`, recording first-wins ownership.
void absorb_path(const Graph& host, const std::vector<NodeId>& nodes, const NodePair& owner,
                 std::map<EdgeKey, Weight>& edges, std::map<EdgeKey, NodePair>& provenance) {
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    auto key = key_of(host, nodes[i], nodes[i + 1]);
    edges.emplace(key, *host.edge_weight(nodes[i], nodes[i + 1]));
    provenance.emplace(key, owner);
  }
}

Graph graph_from(const Graph& like, const std::map<EdgeKey, Weight>& edges) {
  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const auto& [key, w] : edges) list.push_back({key.first, key.second, w});
  return Graph(like.node_count(), like.directed(), like.weighted(), std::move(list));
}

}  // namespace

std::size_t cube_root_ceil(std::size_t n) {
  std::size_t g = 1;
  while (g * g * g < n) ++g;
  return g;
}

std::uint64_t choose3(std::uint64_t k) {
  if (k < 3) return 0;
  return k * (k - 1) * (k - 2) / 6;
}

Graph oriented_union(const Graph& host, const std::vector<const Path*>& paths) {
  std::set<EdgeKey> arcs;
  std::vector<Edge> list;
  for (const Path* path : paths) {
    for (std::size_t i = 0; i + 1 < path->nodes.size(); ++i) {
      EdgeKey arc{path->nodes[i], path->nodes[i + 1]};
      if (arcs.insert(arc).second) {
        list.push_back({arc.first, arc.second, *host.edge_weight(arc.first, arc.second)});
      }
    }
  }
  return Graph(host.node_count(), true, host.weighted(), std::move(list));
}

std::uint64_t count_branching_triples(const Graph& h) {
  if (!h.directed()) throw NotDirected("branching triples are defined on directed graphs");
  std::uint64_t total = 0;
  for (NodeId v = 0; v < h.node_count(); ++v) total += choose3(h.in_degree(v));
  return total;
}

DwPreserver build_dw_preserver(const Graph& g, const PairSet& pairs) {
  DwPreserver out;
  out.group_size = cube_root_ceil(static_cast<std::size_t>(g.node_count()));
  std::map<EdgeKey, Weight> edges;
  for (std::size_t first = 0; first < pairs.size(); first += out.group_size) {
    const std::size_t count = std::min(out.group_size, pairs.size() - first);
    std::vector<NodePair> group(pairs.begin() + static_cast<std::ptrdiff_t>(first),
                                pairs.begin() + static_cast<std::ptrdiff_t>(first + count));
    const auto scheme = consistent_scheme(g, PairSet::unchecked(group));
    std::vector<const Path*> paths;
    for (const auto& p : group) {
      const auto& path = scheme.path(p);
      paths.push_back(&path);
      absorb_path(g, path.nodes, p, edges, out.preserver.provenance);
    }
    const auto oriented = oriented_union(g, paths);
    out.groups.push_back({first, count, oriented.edge_count(), count_branching_triples(oriented)});
  }
  out.preserver.subgraph = graph_from(g, edges);
  out.preserver.demanded = pairs;
  return out;
}

LiftResult bipartite_lift(const Graph& g, const PairSet& pairs) {
  if (g.directed() || g.weighted()) {
    throw PreconditionFailed("bipartite lift needs an undirected unweighted graph");
  }
  const NodeId n = g.node_count();
  LiftResult out;
  out.original_nodes = n;
  std::vector<Edge> edges;
  edges.reserve(2 * g.edge_count());
  for (const auto& e : g.edges()) {
    edges.push_back({e.u, e.v + n, 1});
    edges.push_back({e.u + n, e.v, 1});
  }
  out.lifted = Graph(2 * n, false, false, std::move(edges));

  std::map<NodeId, std::vector<Distance>> from;
  std::vector<NodePair> lifted;
  for (const auto& p : pairs) {
    auto it = from.find(p.source);
    if (it == from.end()) it = from.emplace(p.source, distances_from(g, p.source)).first;
    const auto& d = it->second[p.target];
    if (!d) {
      throw Disconnected("pair (" + std::to_string(p.source) + "," + std::to_string(p.target) +
                         ") is not connected");
    }
    if (*d % 2 == 0) {
      out.parity[p] = Parity::Even;
      lifted.push_back({p.source, p.target});
      lifted.push_back({p.source + n, p.target + n});
    } else {
      out.parity[p] = Parity::Odd;
      lifted.push_back({p.source, p.target + n});
      lifted.push_back({p.source + n, p.target});
    }
    out.origin.push_back(p);
    out.origin.push_back(p);
  }
  // Checked construction: a disconnected lifted pair fails here.
  out.lifted_pairs = PairSet(out.lifted, std::move(lifted));
  return out;
}

Graph contract(const Graph& h_lift, const LiftResult& lift) {
  if (h_lift.node_count() != lift.lifted.node_count() || h_lift.directed() || h_lift.weighted()) {
    throw ShapeMismatch("contraction input is not shaped like the lifted graph");
  }
  if (!is_subgraph(h_lift, lift.lifted)) throw ShapeMismatch("contraction input is not a subgraph of the lift");
  const NodeId n = lift.original_nodes;
  std::set<EdgeKey> keys;
  for (const auto& e : h_lift.edges()) {
    // Lifted edges always join copy 1 (u < n) to copy 2.
    NodeId a = e.u;
    NodeId b = e.v - n;
    keys.insert({std::min(a, b), std::max(a, b)});
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : keys) edges.push_back({u, v, 1});
  return Graph(n, false, false, std::move(edges));
}

std::size_t MatchingPartition::class_edge_total() const {
  std::size_t total = 0;
  for (const auto& [key, edges] : classes) total += edges.size();
  return total;
}

MatchingPartition matching_partition(const std::map<NodeId, SourceTree>& trees, const Graph& h_lift) {
  auto canon = [](NodeId a, NodeId b) { return EdgeKey{std::min(a, b), std::max(a, b)}; };
  std::set<EdgeKey> branching;
  for (const auto& [s, tree] : trees) {
    for (const auto& e : tree.branching) branching.insert(canon(e.parent, e.child));
  }
  MatchingPartition out;
  out.leftover_branching.assign(branching.begin(), branching.end());

  for (const auto& e : h_lift.edges()) {
    const EdgeKey key = canon(e.u, e.v);
    if (branching.count(key)) continue;
    bool owned = false;
    for (const auto& [s, tree] : trees) {
      for (const auto& te : tree.edges) {
        if (canon(te.parent, te.child) != key) continue;
        const auto residue = static_cast<int>(*tree.layer[te.parent] % 3);
        out.classes[{s, residue}].push_back(key);
        owned = true;
        break;
      }
      if (owned) break;
    }
    if (!owned) {
      throw OwnerNotFound("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                          ") lies in no tree");
    }
  }
  return out;
}

bool check_induced_matching(const Graph& gb, const std::vector<EdgeKey>& matching) {
  std::map<NodeId, NodeId> partner;
  for (const auto& [a, b] : matching) {
    if (!gb.has_edge(a, b) && !gb.has_edge(b, a)) return false;
    if (!partner.emplace(a, b).second || !partner.emplace(b, a).second) return false;
  }
  for (const auto& [a, mate] : partner) {
    for (auto arcs : {gb.out_arcs(a), gb.in_arcs(a)}) {
      for (const auto& arc : arcs) {
        if (arc.to != mate && partner.count(arc.to)) return false;
      }
    }
  }
  return true;
}

UuPreserver build_uu_preserver(const Graph& g, const PairSet& pairs) {
  UuPreserver out;
  out.lift = bipartite_lift(g, pairs);
  out.trees = lazy_scheme(out.lift.lifted, out.lift.lifted_pairs);

  std::map<EdgeKey, Weight> lifted_edges;
  for (const auto& [s, tree] : out.trees) {
    for (const auto& e : tree.edges) {
      lifted_edges.emplace(EdgeKey{std::min(e.parent, e.child), std::max(e.parent, e.child)}, 1);
    }
  }
  out.lifted_preserver = graph_from(out.lift.lifted, lifted_edges);
  out.preserver.subgraph = contract(out.lifted_preserver, out.lift);
  out.preserver.demanded = pairs;

  const NodeId n = g.node_count();
  std::map<EdgeKey, Weight> unused;
  for (std::size_t i = 0; i < out.lift.lifted_pairs.size(); ++i) {
    const auto& lp = out.lift.lifted_pairs[i];
    auto nodes = tree_path(out.trees.at(lp.source), lp.target);
    for (auto& v : nodes) v %= n;
    absorb_path(g, nodes, out.lift.origin[i], unused, out.preserver.provenance);
  }
  out.partition = matching_partition(out.trees, out.lifted_preserver);
  return out;
}

PreserverReport verify_preserver(const Graph& g, const Graph& h, const PairSet& pairs) {
  if (h.node_count() != g.node_count() || h.directed() != g.directed()) {
    throw ShapeMismatch("candidate preserver has a different node count or direction");
  }
  PreserverReport report;
  for (const auto& e : h.edges()) {
    auto w = g.edge_weight(e.u, e.v);
    if (!w || *w != e.w) report.foreign_edges.push_back(e);
  }
  std::map<NodeId, std::pair<std::vector<Distance>, std::vector<Distance>>> cache;
  for (const auto& p : pairs) {
    auto it = cache.find(p.source);
    if (it == cache.end()) {
      it = cache.emplace(p.source, std::pair(distances_from(g, p.source), distances_from(h, p.source))).first;
    }
    const auto& dg = it->second.first[p.target];
    const auto& dh = it->second.second[p.target];
    if (dg != dh) report.distance_violations.push_back({p, dg, dh});
  }
  return report;
}

}  // namespace dpres
