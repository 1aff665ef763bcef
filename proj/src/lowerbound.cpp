#include "dpres/lowerbound.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

#include "dpres/shortest_paths.hpp"

namespace dpres {

namespace {

std::string pair_name(NodeId s, NodeId t) {
  return "(" + std::to_string(s) + "," + std::to_string(t) + ")";
}

EdgeKey canon(NodeId a, NodeId b) { return {std::min(a, b), std::max(a, b)}; }

}  // namespace

OuterInstance gen_outer(std::size_t middle_nodes, std::size_t degree, bool weighted) {
  if (degree % 2 != 0) throw OddDegree("middle degree must be even, got " + std::to_string(degree));
  if (degree < 2) throw PreconditionFailed("middle degree must be at least 2");
  const auto half = static_cast<NodeId>(degree / 2);
  const auto mids = static_cast<NodeId>(middle_nodes);
  const NodeId first = mids * half;
  const NodeId n = 2 * first + mids;

  OuterInstance out;
  out.degree = degree;
  out.layer.assign(static_cast<std::size_t>(n), 1);
  std::vector<Edge> edges;
  std::vector<NodePair> pairs;
  for (NodeId k = 0; k < mids; ++k) {
    const NodeId v = first + k;
    for (NodeId j = 0; j < half; ++j) {
      const NodeId c = k * half + j;
      const NodeId z = first + mids + k * half + j;
      out.layer[c] = 0;
      out.layer[z] = 2;
      edges.push_back({c, v, 1});
      edges.push_back({v, z, 1});
      pairs.push_back({c, z});
    }
  }
  out.graph = Graph(n, false, weighted, std::move(edges));
  out.pairs = PairSet(out.graph, std::move(pairs));
  return out;
}

std::vector<Finding> validate_outer(const OuterInstance& inst, std::size_t cap) {
  std::vector<Finding> out;
  const auto& g = inst.graph;
  if (g.directed()) out.push_back({"shape", "outer graph must be undirected"});
  if (inst.layer.size() != static_cast<std::size_t>(g.node_count())) {
    out.push_back({"layering", "layer annotation does not cover every node"});
    return out;
  }
  for (const auto& e : g.edges()) {
    if (std::abs(inst.layer[e.u] - inst.layer[e.v]) != 1) {
      out.push_back({"layering", "edge " + pair_name(e.u, e.v) + " does not join adjacent layers"});
    }
  }
  if (inst.degree % 2 != 0 || inst.degree < 2) {
    out.push_back({"degree", "middle degree " + std::to_string(inst.degree) + " is not an even number >= 2"});
  }
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (inst.layer[v] == 1 && g.out_degree(v) != inst.degree) {
      out.push_back({"degree", "middle node " + std::to_string(v) + " has degree " +
                                   std::to_string(g.out_degree(v)) + ", expected " +
                                   std::to_string(inst.degree)});
    }
  }

  std::vector<std::size_t> uses(g.edge_count(), 0);
  for (const auto& p : inst.pairs) {
    const auto name = pair_name(p.source, p.target);
    const int ls = inst.layer[p.source];
    const int lt = inst.layer[p.target];
    if (!((ls == 0 && lt == 2) || (ls == 2 && lt == 0))) {
      out.push_back({"layering", "pair " + name + " does not join the first and last layers"});
    }
    std::vector<Path> paths;
    try {
      paths = enumerate_shortest_paths(g, p.source, p.target, cap);
    } catch (const CapExceeded&) {
      out.push_back({"unique-path", "pair " + name + " has more than " + std::to_string(cap) + " shortest paths"});
      continue;
    }
    if (paths.size() != 1) {
      out.push_back({"unique-path", "pair " + name + " has " + std::to_string(paths.size()) + " shortest paths"});
      continue;
    }
    if (paths.front().hop_count() != 2) {
      out.push_back({"two-edge", "shortest path of pair " + name + " has " +
                                     std::to_string(paths.front().hop_count()) + " edges"});
    }
    const auto& nodes = paths.front().nodes;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) ++uses[*g.find_edge(nodes[i], nodes[i + 1])];
  }
  for (std::size_t i = 0; i < uses.size(); ++i) {
    if (uses[i] != 1) {
      const auto& e = g.edge(i);
      out.push_back({"edge-use", "edge " + pair_name(e.u, e.v) + " lies on the shortest path of " +
                                     std::to_string(uses[i]) + " pairs"});
    }
  }
  return out;
}

std::vector<Path> disjoint_system_paths(const Graph& g, const PairSet& pairs) {
  std::vector<Path> paths;
  std::vector<std::size_t> uses(g.edge_count(), 0);
  for (const auto& p : pairs) {
    const auto name = pair_name(p.source, p.target);
    std::vector<Path> found;
    try {
      found = enumerate_shortest_paths(g, p.source, p.target, 1);
    } catch (const CapExceeded&) {
      throw NotDisjointSystem("pair " + name + " has several shortest paths");
    }
    if (found.empty()) throw NotDisjointSystem("pair " + name + " is not connected");
    const auto& nodes = found.front().nodes;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      if (++uses[*g.find_edge(nodes[i], nodes[i + 1])] > 1) {
        throw NotDisjointSystem("pair paths share edge " + pair_name(nodes[i], nodes[i + 1]));
      }
    }
    paths.push_back(std::move(found.front()));
  }
  for (std::size_t i = 0; i < uses.size(); ++i) {
    if (uses[i] == 0) {
      throw NotDisjointSystem("edge " + pair_name(g.edge(i).u, g.edge(i).v) + " is on no pair path");
    }
  }
  return paths;
}

InnerInstance make_inner(Graph g, PairSet pairs, std::vector<int> layer) {
  InnerInstance inst;
  const auto paths = disjoint_system_paths(g, pairs);
  for (std::size_t i = 0; i < pairs.size(); ++i) inst.path_lengths[pairs[i]] = paths[i].length;
  if (!layer.empty()) {
    if (layer.size() != static_cast<std::size_t>(g.node_count())) {
      throw LayerMismatch("layer annotation does not cover every node");
    }
    const int last = *std::max_element(layer.begin(), layer.end());
    inst.layer_count = static_cast<std::size_t>(last) + 1;
    for (const auto& p : pairs) {
      if (layer[p.source] != 0 || layer[p.target] != last || inst.path_lengths[p] != last) {
        throw LayerMismatch("pair " + pair_name(p.source, p.target) + " does not span first to last layer");
      }
    }
  }
  inst.graph = std::move(g);
  inst.pairs = std::move(pairs);
  inst.layer = std::move(layer);
  return inst;
}

InnerInstance gen_inner(std::size_t pairs, std::size_t length, bool layered) {
  if (pairs < 1 || length < 1) throw PreconditionFailed("inner generator needs pairs >= 1 and length >= 1");
  const auto stride = static_cast<NodeId>(length + 1);
  const auto count = static_cast<NodeId>(pairs);
  std::vector<Edge> edges;
  std::vector<NodePair> demand;
  std::vector<int> layer;
  for (NodeId i = 0; i < count; ++i) {
    for (NodeId j = 0; j < stride; ++j) {
      if (j + 1 < stride) edges.push_back({i * stride + j, i * stride + j + 1, 1});
      layer.push_back(j);
    }
    demand.push_back({i * stride, i * stride + stride - 1});
  }
  Graph g(count * stride, false, false, std::move(edges));
  PairSet p(g, std::move(demand));
  return make_inner(std::move(g), std::move(p), layered ? std::move(layer) : std::vector<int>{});
}

std::vector<Finding> validate_inner(const InnerInstance& inst) {
  std::vector<Finding> out;
  std::vector<Path> paths;
  try {
    paths = disjoint_system_paths(inst.graph, inst.pairs);
  } catch (const NotDisjointSystem& e) {
    out.push_back({"disjoint-system", e.what()});
    return out;
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    auto it = inst.path_lengths.find(inst.pairs[i]);
    if (it == inst.path_lengths.end() || it->second != paths[i].length) {
      out.push_back({"path-length", "recorded length of pair " +
                                        pair_name(inst.pairs[i].source, inst.pairs[i].target) + " is wrong"});
    }
  }
  if (!inst.layer_count) return out;
  const auto ell = static_cast<int>(*inst.layer_count);
  if (inst.layer.size() != static_cast<std::size_t>(inst.graph.node_count())) {
    out.push_back({"layering", "layer annotation does not cover every node"});
    return out;
  }
  for (const auto& e : inst.graph.edges()) {
    if (std::abs(inst.layer[e.u] - inst.layer[e.v]) != 1) {
      out.push_back({"layering", "edge " + pair_name(e.u, e.v) + " does not join adjacent layers"});
    }
  }
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& p = inst.pairs[i];
    if (inst.layer[p.source] != 0 || inst.layer[p.target] != ell - 1) {
      out.push_back({"layering", "pair " + pair_name(p.source, p.target) + " does not span first to last layer"});
    }
    if (paths[i].length != ell - 1) {
      out.push_back({"layering", "pair " + pair_name(p.source, p.target) + " is at distance " +
                                     std::to_string(paths[i].length) + ", expected " + std::to_string(ell - 1)});
    }
  }
  return out;
}

InnerInstance layered_regularize(const Graph& g, const PairSet& pairs) {
  if (g.directed() || g.weighted()) throw NotDisjointSystem("regularization needs an undirected unweighted graph");
  if (pairs.empty()) throw NotDisjointSystem("no pairs");
  const auto paths = disjoint_system_paths(g, pairs);
  Weight total = 0;
  for (const auto& p : paths) total += p.length;
  // floor(L / 2) with L = total / p.
  const Weight piece = total / (2 * static_cast<Weight>(pairs.size()));
  if (piece < 1) throw PreconditionFailed("mean pair distance is below 2; nothing to regularize");

  // Step 1: cut every path into pieces of exactly `piece` edges.
  std::vector<std::vector<NodeId>> segments;
  std::vector<Edge> kept;
  for (const auto& path : paths) {
    const auto len = static_cast<Weight>(path.hop_count());
    for (Weight start = 0; start + piece <= len; start += piece) {
      std::vector<NodeId> seg(path.nodes.begin() + start, path.nodes.begin() + start + piece + 1);
      for (std::size_t i = 0; i + 1 < seg.size(); ++i) kept.push_back({seg[i], seg[i + 1], 1});
      segments.push_back(std::move(seg));
    }
  }
  const Graph regular(g.node_count(), false, false, std::move(kept));

  // Step 2: ell copies; copy i joined to copy i + 1 along every edge.
  const NodeId n = g.node_count();
  const auto ell = static_cast<NodeId>(piece + 1);
  std::vector<Edge> stacked;
  for (NodeId i = 0; i + 1 < ell; ++i) {
    for (const auto& e : regular.edges()) {
      stacked.push_back({i * n + e.u, (i + 1) * n + e.v, 1});
      stacked.push_back({i * n + e.v, (i + 1) * n + e.u, 1});
    }
  }
  const Graph full(ell * n, false, false, std::move(stacked));
  std::vector<NodePair> demand;
  for (const auto& seg : segments) demand.push_back({seg.front(), (ell - 1) * n + seg.back()});
  const PairSet layered_pairs(full, demand);

  // Keep only the edges of the (unique) demanded paths.
  std::set<EdgeKey> used;
  for (const auto& p : layered_pairs) {
    std::vector<Path> found;
    try {
      found = enumerate_shortest_paths(full, p.source, p.target, 1);
    } catch (const CapExceeded&) {
      throw NotDisjointSystem("layered pair " + pair_name(p.source, p.target) + " lost path uniqueness");
    }
    for (std::size_t i = 0; i + 1 < found.front().nodes.size(); ++i) {
      used.insert(canon(found.front().nodes[i], found.front().nodes[i + 1]));
    }
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : used) edges.push_back({u, v, 1});
  Graph result(ell * n, false, false, std::move(edges));
  std::vector<int> layer(static_cast<std::size_t>(ell * n));
  for (NodeId v = 0; v < ell * n; ++v) layer[v] = v / n;
  PairSet result_pairs(result, std::move(demand));
  return make_inner(std::move(result), std::move(result_pairs), std::move(layer));
}

Graph induced_range(const Graph& g, NodeId first, NodeId count) {
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    if (e.u >= first && e.u < first + count && e.v >= first && e.v < first + count) {
      edges.push_back({e.u - first, e.v - first, e.w});
    }
  }
  return Graph(count, g.directed(), g.weighted(), std::move(edges));
}

ObstacleInstance obstacle_product(const OuterInstance& outer, const InnerFactory& inner_factory,
                                  ObstacleMode mode, const ObstacleOptions& options) {
  const auto& og = outer.graph;
  if (og.directed()) throw PreconditionFailed("outer graph must be undirected");
  if (outer.layer.size() != static_cast<std::size_t>(og.node_count())) {
    throw PreconditionFailed("outer layer annotation does not cover every node");
  }
  const bool weighted = mode == ObstacleMode::Weighted;
  if (!weighted) {
    if (options.scale_override) throw PreconditionFailed("unweighted obstacle product takes no scale");
    for (const auto& e : og.edges()) {
      if (e.w != 1) throw PreconditionFailed("unweighted obstacle product needs unit outer weights");
    }
  }

  // Middle node of each outer pair's two-edge shortest path.
  struct Routed {
    NodePair pair;
    NodeId c, z, middle;
  };
  std::map<NodeId, std::vector<Routed>> through;
  for (const auto& p : outer.pairs) {
    Routed r{p, p.source, p.target, -1};
    if (outer.layer[r.c] == 2) std::swap(r.c, r.z);
    if (outer.layer[r.c] != 0 || outer.layer[r.z] != 2) {
      throw PreconditionFailed("outer pair " + pair_name(p.source, p.target) + " does not join first and last layers");
    }
    std::optional<Weight> best;
    bool tie = false;
    for (const auto& arc : og.out_arcs(r.c)) {
      if (outer.layer[arc.to] != 1) continue;
      auto second = og.edge_weight(arc.to, r.z);
      if (!second) continue;
      const Weight len = og.edge(arc.edge).w + *second;
      if (!best || len < *best) {
        best = len;
        r.middle = arc.to;
        tie = false;
      } else if (len == *best) {
        tie = true;
      }
    }
    if (!best || tie) {
      throw PreconditionFailed("outer pair " + pair_name(p.source, p.target) + " has no unique two-edge path");
    }
    through[r.middle].push_back(r);
  }

  // Draw every inner first: the weighted scale depends on all of them.
  std::vector<NodeId> middles;
  std::vector<InnerInstance> inners;
  std::optional<std::size_t> common_layers;
  Weight inner_diameter = 0;
  for (NodeId v = 0; v < og.node_count(); ++v) {
    if (outer.layer[v] != 1) continue;
    const auto degree = og.out_degree(v);
    auto inner = inner_factory(v, degree);
    if (inner.pairs.size() * 2 != degree || through[v].size() != inner.pairs.size()) {
      throw PairCountMismatch("middle node " + std::to_string(v) + " has degree " + std::to_string(degree) +
                              " and " + std::to_string(through[v].size()) + " pairs, inner supplies " +
                              std::to_string(inner.pairs.size()));
    }
    std::set<NodeId> attached;
    for (const auto& r : through[v]) {
      attached.insert(r.c);
      attached.insert(r.z);
    }
    if (attached.size() != degree) {
      throw PreconditionFailed("edges at middle node " + std::to_string(v) + " are not used by distinct pairs");
    }
    if (!weighted) {
      if (!inner.layer_count) throw LayerMismatch("unweighted mode needs layered inner instances");
      if (common_layers && *common_layers != *inner.layer_count) {
        throw LayerMismatch("inner instances have different layer counts");
      }
      if (inner.graph.weighted()) throw LayerMismatch("unweighted mode needs unweighted inner instances");
      common_layers = inner.layer_count;
      const int last = static_cast<int>(*inner.layer_count) - 1;
      for (const auto& p : inner.pairs) {
        if (inner.layer[p.source] != 0 || inner.layer[p.target] != last) {
          throw LayerMismatch("inner pair " + pair_name(p.source, p.target) + " does not span first to last layer");
        }
      }
    }
    for (const auto& [pair, len] : inner.path_lengths) inner_diameter = std::max(inner_diameter, len);
    middles.push_back(v);
    inners.push_back(std::move(inner));
  }

  ObstacleInstance out;
  out.mode = mode;
  out.scale = weighted ? options.scale_override.value_or(2 * inner_diameter) : 1;
  if (out.scale < 1) throw PreconditionFailed("scale must be positive");

  std::vector<NodeId> composed(static_cast<std::size_t>(og.node_count()), -1);
  NodeId next = 0;
  for (NodeId v = 0; v < og.node_count(); ++v) {
    if (outer.layer[v] != 1) {
      composed[v] = next++;
      out.subset.push_back(composed[v]);
    }
  }

  std::vector<Edge> edges;
  for (const auto& e : og.edges()) {
    if (outer.layer[e.u] != 1 && outer.layer[e.v] != 1) {
      edges.push_back({composed[e.u], composed[e.v], e.w * out.scale});
    }
  }
  for (std::size_t k = 0; k < middles.size(); ++k) {
    const NodeId v = middles[k];
    const auto& inner = inners[k];
    Replacement rep;
    rep.middle = v;
    rep.first_node = next;
    rep.node_count = inner.graph.node_count();
    for (const auto& e : inner.graph.edges()) edges.push_back({e.u + next, e.v + next, e.w});
    const auto& routed = through[v];
    for (std::size_t i = 0; i < routed.size(); ++i) {
      const auto& r = routed[i];
      const auto& ip = inner.pairs[i];
      Correspondence corr;
      corr.demanded = {composed[r.pair.source], composed[r.pair.target]};
      corr.first_end = composed[r.c];
      corr.last_end = composed[r.z];
      corr.inner = {ip.source + next, ip.target + next};
      corr.inner_distance = inner.path_lengths.at(ip);
      edges.push_back({corr.first_end, corr.inner.source, *og.edge_weight(r.c, v) * out.scale});
      edges.push_back({corr.inner.target, corr.last_end, *og.edge_weight(v, r.z) * out.scale});
      rep.pairs.push_back(corr);
    }
    next += rep.node_count;
    out.replacements.push_back(std::move(rep));
  }
  out.graph = Graph(next, false, weighted, std::move(edges));

  std::vector<NodePair> demanded;
  for (const auto& p : outer.pairs) demanded.push_back({composed[p.source], composed[p.target]});
  out.demanded = PairSet(out.graph, std::move(demanded));

  if (common_layers) {
    const int last = static_cast<int>(*common_layers) + 1;
    out.layer.assign(static_cast<std::size_t>(next), 0);
    for (NodeId v = 0; v < og.node_count(); ++v) {
      if (outer.layer[v] != 1) out.layer[composed[v]] = outer.layer[v] == 0 ? 0 : last;
    }
    for (std::size_t k = 0; k < inners.size(); ++k) {
      const auto& rep = out.replacements[k];
      for (NodeId u = 0; u < rep.node_count; ++u) out.layer[rep.first_node + u] = inners[k].layer[u] + 1;
    }
  }
  return out;
}

std::vector<StructureFinding> check_path_structure(const ObstacleInstance& inst, std::size_t cap) {
  std::vector<StructureFinding> out;
  const auto& g = inst.graph;
  for (const auto& rep : inst.replacements) {
    std::set<NodePair> inner_seen;
    for (const auto& corr : rep.pairs) {
      const NodePair pair{corr.first_end, corr.last_end};
      if (!inner_seen.insert(corr.inner).second) {
        out.push_back({pair, {}, "inner pair used by two outer pairs"});
      }
      const auto paths = enumerate_shortest_paths(g, corr.first_end, corr.last_end, cap);
      if (paths.empty()) out.push_back({pair, {}, "pair is disconnected"});
      for (const auto& path : paths) {
        const auto& nodes = path.nodes;
        const auto inside = [&](NodeId x) { return x >= rep.first_node && x < rep.first_node + rep.node_count; };
        std::string reason;
        if (nodes.size() < 3 || nodes[1] != corr.inner.source || nodes[nodes.size() - 2] != corr.inner.target) {
          reason = "does not enter at q and leave at r";
        } else if (!std::all_of(nodes.begin() + 1, nodes.end() - 1, inside)) {
          reason = "leaves the designated inner copy";
        } else {
          Weight inner_len = 0;
          for (std::size_t i = 1; i + 2 < nodes.size(); ++i) inner_len += *g.edge_weight(nodes[i], nodes[i + 1]);
          if (inner_len != corr.inner_distance) reason = "inner portion is not a shortest q-r path";
        }
        if (!reason.empty()) out.push_back({pair, nodes, reason});
      }
    }
  }
  return out;
}

std::vector<EdgeKey> forced_edges(const ObstacleInstance& inst, std::size_t cap) {
  if (!check_path_structure(inst, cap).empty()) {
    throw PreconditionFailed("shortest paths of the composed instance are not structured");
  }
  std::set<EdgeKey> forced;
  for (const auto& rep : inst.replacements) {
    const auto copy = induced_range(inst.graph, rep.first_node, rep.node_count);
    for (const auto& corr : rep.pairs) {
      std::vector<Path> found;
      try {
        found = enumerate_shortest_paths(copy, corr.inner.source - rep.first_node,
                                         corr.inner.target - rep.first_node, 1);
      } catch (const CapExceeded&) {
        throw PreconditionFailed("inner pair " + pair_name(corr.inner.source, corr.inner.target) +
                                 " has several shortest paths");
      }
      if (found.empty()) throw PreconditionFailed("inner pair is disconnected inside its copy");
      const auto& nodes = found.front().nodes;
      for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
        forced.insert(canon(nodes[i] + rep.first_node, nodes[i + 1] + rep.first_node));
      }
      forced.insert(canon(corr.first_end, corr.inner.source));
      forced.insert(canon(corr.inner.target, corr.last_end));
    }
  }
  return {forced.begin(), forced.end()};
}

std::size_t forced_edge_count(const ObstacleInstance& inst, std::size_t cap) {
  return forced_edges(inst, cap).size();
}

}  // namespace dpres
