#include "dpres/tiebreak.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <tuple>

namespace dpres {

namespace {

std::string pair_name(NodeId s, NodeId t) {
  return "(" + std::to_string(s) + "," + std::to_string(t) + ")";
}

// Dijkstra over the perturbed graph keeping the (unique) predecessor.
std::vector<NodeId> unique_parents(const PerturbedGraph& g, NodeId source) {
  const auto n = static_cast<std::size_t>(g.node_count());
  std::vector<std::optional<BigWeight>> dist(n);
  std::vector<NodeId> parent(n, -1);
  using Entry = std::pair<BigWeight, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  dist[source] = BigWeight(0);
  queue.emplace(BigWeight(0), source);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d != *dist[u]) continue;
    for (const auto& arc : g.out_arcs(u)) {
      BigWeight nd = d + g.edge(arc.edge).w;
      auto& slot = dist[arc.to];
      if (!slot || nd < *slot) {
        slot = nd;
        parent[arc.to] = u;
        queue.emplace(std::move(nd), arc.to);
      }
    }
  }
  return parent;
}

}  // namespace

PerturbedGraph perturb_weights(const Graph& g) {
  const auto m = g.edge_count();
  std::vector<PerturbedGraph::Edge> edges;
  edges.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto& e = g.edge(i);
    BigWeight w = BigWeight(e.w) << m;
    w += BigWeight(1) << i;
    edges.push_back({e.u, e.v, std::move(w)});
  }
  // Edge order is canonical in both graphs, so indices are preserved.
  return PerturbedGraph(g.node_count(), g.directed(), true, std::move(edges));
}

PathSystem::PathSystem(Graph host, std::map<NodePair, Path> entries)
    : host_(std::move(host)), entries_(std::move(entries)) {
  std::map<NodeId, std::vector<Distance>> from;
  for (const auto& [pair, path] : entries_) {
    const auto name = pair_name(pair.source, pair.target);
    if (path.nodes.empty() || path.nodes.front() != pair.source ||
        path.nodes.back() != pair.target) {
      throw InvariantViolation("stored path for " + name + " has wrong endpoints");
    }
    if (path_weight(host_, std::span<const NodeId>(path.nodes)) != path.length) {
      throw InvariantViolation("stored length for " + name + " is wrong");
    }
    auto it = from.find(pair.source);
    if (it == from.end()) it = from.emplace(pair.source, distances_from(host_, pair.source)).first;
    if (it->second[pair.target] != path.length) {
      throw InvariantViolation("stored path for " + name + " is not shortest");
    }
  }
}

PathSystem PathSystem::unchecked(Graph host, std::map<NodePair, Path> entries) {
  PathSystem ps;
  ps.host_ = std::move(host);
  ps.entries_ = std::move(entries);
  return ps;
}

PathSystem consistent_scheme(const Graph& g, const PairSet& pairs) {
  const auto perturbed = perturb_weights(g);
  std::map<NodePair, Path> entries;
  for (const auto& [source, targets] : pairs.by_source()) {
    g.check_node(source);
    const auto parent = unique_parents(perturbed, source);
    for (NodeId t : targets) {
      g.check_node(t);
      if (t != source && parent[t] < 0) throw Disconnected("pair " + pair_name(source, t) + " is not connected");
      Path path;
      for (NodeId v = t; v != source; v = parent[v]) path.nodes.push_back(v);
      path.nodes.push_back(source);
      std::reverse(path.nodes.begin(), path.nodes.end());
      path.length = path_weight(g, std::span<const NodeId>(path.nodes));
      entries.emplace(NodePair{source, t}, std::move(path));
    }
  }
  return PathSystem::unchecked(g, std::move(entries));
}

std::vector<ConsistencyViolation> check_consistency(const PathSystem& ps) {
  std::vector<ConsistencyViolation> out;
  for (const auto& [outer, path] : ps.entries()) {
    const auto& nodes = path.nodes;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        const NodePair inner{nodes[i], nodes[j]};
        auto it = ps.entries().find(inner);
        if (it == ps.entries().end()) continue;
        const auto& stored = it->second.nodes;
        const bool same = stored.size() == j - i + 1 &&
                          std::equal(stored.begin(), stored.end(), nodes.begin() + static_cast<std::ptrdiff_t>(i));
        if (!same) out.push_back({outer, inner});
      }
    }
  }
  return out;
}

std::vector<TreeEdge> branching_edges(const std::vector<TreeEdge>& edges) {
  std::map<NodeId, std::size_t> out_degree;
  for (const auto& e : edges) ++out_degree[e.parent];
  std::vector<TreeEdge> out;
  for (const auto& e : edges) {
    if (out_degree[e.parent] >= 2) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeId> tree_path(const SourceTree& tree, NodeId target) {
  std::map<NodeId, NodeId> parent;
  for (const auto& e : tree.edges) {
    if (!parent.emplace(e.child, e.parent).second) return {};
  }
  std::vector<NodeId> nodes{target};
  std::set<NodeId> seen{target};
  while (nodes.back() != tree.source) {
    auto it = parent.find(nodes.back());
    if (it == parent.end() || !seen.insert(it->second).second) return {};
    nodes.push_back(it->second);
  }
  std::reverse(nodes.begin(), nodes.end());
  return nodes;
}

void require_bipartite(const Graph& gb) {
  std::vector<int> side(static_cast<std::size_t>(gb.node_count()), -1);
  for (NodeId start = 0; start < gb.node_count(); ++start) {
    if (side[start] >= 0) continue;
    side[start] = 0;
    std::queue<NodeId> queue;
    queue.push(start);
    while (!queue.empty()) {
      NodeId u = queue.front();
      queue.pop();
      for (const auto& arc : gb.out_arcs(u)) {
        if (side[arc.to] < 0) {
          side[arc.to] = 1 - side[u];
          queue.push(arc.to);
        } else if (side[arc.to] == side[u]) {
          throw NotBipartite("odd cycle through edge " + pair_name(u, arc.to));
        }
      }
    }
  }
}

namespace {

// Descending list of branching-edge distances (layer of the near endpoint).
std::vector<Weight> branching_profile(const std::vector<NodeId>& parent,
                                      const std::vector<std::size_t>& children,
                                      const std::vector<Distance>& layer,
                                      const std::vector<char>& in_tree, NodeId source) {
  std::vector<Weight> out;
  for (NodeId v = 0; v < static_cast<NodeId>(parent.size()); ++v) {
    if (v == source || !in_tree[v]) continue;
    if (children[parent[v]] >= 2) out.push_back(*layer[parent[v]]);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

SourceTree lazy_tree(const Graph& gb, NodeId source, const std::vector<NodeId>& targets) {
  const auto n = static_cast<std::size_t>(gb.node_count());
  auto layer = distances_from(gb, source);
  std::vector<char> is_target(n, 0);
  for (NodeId t : targets) {
    gb.check_node(t);
    if (!layer[t]) throw Disconnected("pair " + pair_name(source, t) + " is not connected");
    is_target[t] = 1;
  }

  // BFS tree with the minimum-id parent on the previous layer.
  std::vector<NodeId> parent(n, -1);
  for (NodeId v = 0; v < gb.node_count(); ++v) {
    if (v == source || !layer[v]) continue;
    for (const auto& arc : gb.out_arcs(v)) {
      if (layer[arc.to] && *layer[arc.to] + 1 == *layer[v]) {
        parent[v] = arc.to;
        break;
      }
    }
  }
  std::vector<char> in_tree(n, 0);
  in_tree[source] = 1;
  for (NodeId t : targets) {
    for (NodeId v = t; !in_tree[v]; v = parent[v]) in_tree[v] = 1;
  }
  std::vector<std::size_t> children(n, 0);
  for (NodeId v = 0; v < gb.node_count(); ++v) {
    if (v != source && in_tree[v]) ++children[parent[v]];
  }

  std::size_t repairs = 0;
  auto profile = branching_profile(parent, children, layer, in_tree, source);
  for (;;) {
    // Non-branching tree edges (x, y) keyed by y, grouped by layer of y.
    std::map<Weight, std::vector<NodeId>, std::greater<>> by_layer;
    for (NodeId y = 0; y < gb.node_count(); ++y) {
      if (y == source || !in_tree[y] || children[parent[y]] != 1) continue;
      by_layer[*layer[y]].push_back(y);
    }
    // (x', y', x, y): reroute y' from x' to x.
    std::optional<std::tuple<NodeId, NodeId, NodeId, NodeId>> pick;
    for (const auto& [depth, heads] : by_layer) {
      for (NodeId y : heads) {
        for (NodeId y2 : heads) {
          if (y == y2) continue;
          const NodeId x = parent[y];
          const NodeId x2 = parent[y2];
          if (!gb.has_edge(x, y2)) continue;
          auto candidate = std::tuple(x2, y2, x, y);
          if (!pick || candidate < *pick) pick = candidate;
        }
      }
      if (pick) break;
    }
    if (!pick) break;

    auto [x2, y2, x, y] = *pick;
    parent[y2] = x;
    ++children[x];
    --children[x2];
    for (NodeId v = x2; v != source && children[v] == 0 && !is_target[v];) {
      in_tree[v] = 0;
      const NodeId up = parent[v];
      --children[up];
      v = up;
    }
    ++repairs;

    auto next = branching_profile(parent, children, layer, in_tree, source);
    if (!(next > profile)) {
      throw std::logic_error("lazy repair failed to increase the branching profile");
    }
    profile = std::move(next);
  }

  SourceTree tree;
  tree.source = source;
  tree.layer = std::move(layer);
  tree.repairs = repairs;
  for (NodeId v = 0; v < gb.node_count(); ++v) {
    if (v != source && in_tree[v]) tree.edges.push_back({parent[v], v});
  }
  std::sort(tree.edges.begin(), tree.edges.end());
  tree.branching = branching_edges(tree.edges);
  return tree;
}

}  // namespace

std::map<NodeId, SourceTree> lazy_scheme(const Graph& gb, const PairSet& pairs) {
  if (gb.directed() || gb.weighted()) {
    throw PreconditionFailed("lazy tiebreaking needs an undirected unweighted graph");
  }
  require_bipartite(gb);
  std::map<NodeId, SourceTree> trees;
  for (const auto& [source, targets] : pairs.by_source()) {
    gb.check_node(source);
    trees.emplace(source, lazy_tree(gb, source, targets));
  }
  return trees;
}

std::vector<LazyViolation> check_lazy(const std::map<NodeId, SourceTree>& trees, const Graph& gb,
                                      const PairSet& pairs) {
  std::vector<LazyViolation> out;
  for (const auto& [source, targets] : pairs.by_source()) {
    auto it = trees.find(source);
    if (it == trees.end()) {
      out.push_back({source, "missing", "no tree for source " + std::to_string(source)});
      continue;
    }
    const auto& tree = it->second;
    const auto dist = distances_from(gb, source);

    // (1) a tree rooted at the source whose paths are shortest.
    bool tree_ok = tree.source == source;
    std::set<NodeId> heads;
    for (const auto& e : tree.edges) {
      if (!gb.has_edge(e.parent, e.child)) {
        out.push_back({source, "tree", "edge " + pair_name(e.parent, e.child) + " not in graph"});
        tree_ok = false;
      }
      if (e.child == source || !heads.insert(e.child).second) {
        out.push_back({source, "tree", "node " + std::to_string(e.child) + " has two parents"});
        tree_ok = false;
      }
    }
    for (const auto& e : tree.edges) {
      if (tree_path(tree, e.child).empty()) {
        out.push_back({source, "tree", "node " + std::to_string(e.child) + " not reachable from source"});
        tree_ok = false;
      }
    }
    if (!tree_ok) continue;
    for (NodeId t : targets) {
      auto nodes = tree_path(tree, t);
      if (nodes.empty() || !dist[t] || static_cast<Weight>(nodes.size() - 1) != *dist[t]) {
        out.push_back({source, "distance", "pair " + pair_name(source, t) + " not preserved"});
      }
    }
    const auto branching = branching_edges(tree.edges);
    if (branching != tree.branching) {
      out.push_back({source, "branching", "stored branching set is wrong"});
    }

    // (2) no crossing edge between same-layer non-branching edges.
    std::vector<TreeEdge> plain;
    std::set_difference(tree.edges.begin(), tree.edges.end(), branching.begin(), branching.end(),
                        std::back_inserter(plain));
    for (std::size_t i = 0; i < plain.size(); ++i) {
      for (std::size_t j = i + 1; j < plain.size(); ++j) {
        const auto& a = plain[i];
        const auto& b = plain[j];
        if (!dist[a.parent] || !dist[a.child] || !dist[b.parent] || !dist[b.child]) continue;
        const Weight la = *dist[a.child];
        if (*dist[b.child] != la || *dist[a.parent] + 1 != la || *dist[b.parent] + 1 != la) continue;
        if (gb.has_edge(a.parent, b.child) || gb.has_edge(b.parent, a.child)) {
          out.push_back({source, "lazy",
                         "edges " + pair_name(a.parent, a.child) + " and " + pair_name(b.parent, b.child) +
                             " cross"});
        }
      }
    }
  }
  return out;
}

}  // namespace dpres
