#pragma once

#include <functional>
#include <optional>
#include <queue>
#include <utility>
#include <vector>

#include "dpres/graph.hpp"

namespace dpres {

/// Shortest-path weight, or nullopt when unreachable.
using Distance = std::optional<Weight>;
using DistanceMatrix = std::vector<std::vector<Distance>>;

namespace detail {

template <class W>
std::vector<std::optional<W>> dijkstra(const BasicGraph<W>& g, NodeId root, bool reverse) {
  g.check_node(root);
  std::vector<std::optional<W>> dist(static_cast<std::size_t>(g.node_count()));
  using Entry = std::pair<W, NodeId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> queue;
  dist[root] = W(0);
  queue.emplace(W(0), root);
  while (!queue.empty()) {
    auto [d, u] = queue.top();
    queue.pop();
    if (d != *dist[u]) continue;
    for (const auto& arc : reverse ? g.in_arcs(u) : g.out_arcs(u)) {
      W nd = d + g.edge(arc.edge).w;
      auto& slot = dist[arc.to];
      if (!slot || nd < *slot) {
        slot = nd;
        queue.emplace(std::move(nd), arc.to);
      }
    }
  }
  return dist;
}

}  // namespace detail

/// Distances from `source` to every node.
template <class W>
std::vector<std::optional<W>> distances_from(const BasicGraph<W>& g, NodeId source) {
  return detail::dijkstra(g, source, false);
}

/// Distances from every node to `target`.
template <class W>
std::vector<std::optional<W>> distances_to(const BasicGraph<W>& g, NodeId target) {
  return detail::dijkstra(g, target, true);
}

template <class W>
std::optional<W> shortest_distance(const BasicGraph<W>& g, NodeId u, NodeId v) {
  g.check_node(v);
  return distances_from(g, u)[v];
}

template <class W>
std::vector<std::vector<std::optional<W>>> all_pairs_distances(const BasicGraph<W>& g) {
  std::vector<std::vector<std::optional<W>>> d;
  d.reserve(static_cast<std::size_t>(g.node_count()));
  for (NodeId u = 0; u < g.node_count(); ++u) d.push_back(distances_from(g, u));
  return d;
}

/// All distinct shortest u->v paths in lexicographic node order.
///
/// Walks the shortest-path DAG (arcs a->b with d(u,a) + w + d(b,v) = d(u,v)),
/// so every branch explored ends at v. Throws CapExceeded as soon as more than
/// `cap` paths exist. Returns an empty list when v is unreachable.
template <class W>
std::vector<BasicPath<W>> enumerate_shortest_paths(const BasicGraph<W>& g, NodeId u, NodeId v,
                                                   std::size_t cap) {
  g.check_node(u);
  g.check_node(v);
  if (cap < 1) throw PreconditionFailed("enumeration cap must be at least 1");
  auto from_u = distances_from(g, u);
  if (!from_u[v]) return {};
  auto to_v = distances_to(g, v);
  const W total = *from_u[v];

  std::vector<BasicPath<W>> out;
  std::vector<NodeId> stack_nodes{u};
  // Next arc position to try for each node on the current prefix.
  std::vector<std::size_t> cursor{0};
  while (!stack_nodes.empty()) {
    NodeId a = stack_nodes.back();
    if (a == v) {
      if (out.size() == cap) {
        throw CapExceeded("more than " + std::to_string(cap) + " shortest paths from " +
                          std::to_string(u) + " to " + std::to_string(v));
      }
      out.push_back({stack_nodes, total});
      stack_nodes.pop_back();
      cursor.pop_back();
      continue;
    }
    auto arcs = g.out_arcs(a);
    bool descended = false;
    while (cursor.back() < arcs.size()) {
      const auto& arc = arcs[cursor.back()++];
      const auto& rest = to_v[arc.to];
      if (rest && *from_u[a] + g.edge(arc.edge).w + *rest == total) {
        stack_nodes.push_back(arc.to);
        cursor.push_back(0);
        descended = true;
        break;
      }
    }
    if (!descended) {
      stack_nodes.pop_back();
      cursor.pop_back();
    }
  }
  return out;
}

/// True iff every edge of h is present in g with identical weight.
template <class W>
bool is_subgraph(const BasicGraph<W>& h, const BasicGraph<W>& g) {
  if (h.node_count() != g.node_count() || h.directed() != g.directed() ||
      h.weighted() != g.weighted()) {
    throw ShapeMismatch("subgraph check needs matching node count and flags");
  }
  for (const auto& e : h.edges()) {
    auto w = g.edge_weight(e.u, e.v);
    if (!w || *w != e.w) return false;
  }
  return true;
}

}  // namespace dpres
