#pragma once

// Slow reference implementations used to check the library. Everything here
// works from the raw edge list only and shares no code with the library's
// shortest-path routines.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dpres/graph.hpp"
#include "dpres/pairs.hpp"

namespace oracle {

using dpres::Graph;
using dpres::NodeId;
using Dist = std::optional<std::int64_t>;
using Matrix = std::vector<std::vector<Dist>>;

struct Arc {
  NodeId from, to;
  std::int64_t w;
};

inline std::vector<Arc> arcs(const Graph& g) {
  std::vector<Arc> out;
  for (const auto& e : g.edges()) {
    out.push_back({e.u, e.v, e.w});
    if (!g.directed()) out.push_back({e.v, e.u, e.w});
  }
  return out;
}

inline Matrix floyd(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.node_count());
  Matrix d(n, std::vector<Dist>(n));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& a : arcs(g)) {
    auto& cell = d[a.from][a.to];
    if (!cell || a.w < *cell) cell = a.w;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) d[i][j] = *d[i][k] + *d[k][j];
  return d;
}

// Full relaxation, n - 1 rounds over every arc.
inline std::vector<Dist> bellman_ford(const Graph& g, NodeId s) {
  std::vector<Dist> d(static_cast<std::size_t>(g.node_count()));
  d[s] = 0;
  const auto all = arcs(g);
  for (NodeId round = 1; round < g.node_count(); ++round) {
    bool changed = false;
    for (const auto& a : all) {
      if (d[a.from] && (!d[a.to] || *d[a.from] + a.w < *d[a.to])) {
        d[a.to] = *d[a.from] + a.w;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return d;
}

// Number of shortest u -> v paths by DP over the shortest-path DAG.
inline std::uint64_t count_shortest_paths(const Graph& g, NodeId u, NodeId v) {
  const auto d = floyd(g);
  if (!d[u][v]) return 0;
  std::vector<NodeId> order(static_cast<std::size_t>(g.node_count()));
  for (NodeId x = 0; x < g.node_count(); ++x) order[x] = x;
  std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
    return d[u][a].value_or(INT64_MAX) < d[u][b].value_or(INT64_MAX);
  });
  std::vector<std::uint64_t> ways(order.size(), 0);
  ways[u] = 1;
  const auto all = arcs(g);
  for (NodeId x : order) {
    if (!d[u][x]) break;
    for (const auto& a : all) {
      if (a.from == x && d[u][a.to] && *d[u][x] + a.w == *d[u][a.to]) ways[a.to] += ways[x];
    }
  }
  return ways[v];
}

// Every simple u -> v path, by exhaustive search. Tiny graphs only.
inline std::vector<std::vector<NodeId>> all_simple_paths(const Graph& g, NodeId u, NodeId v) {
  std::vector<std::vector<NodeId>> out;
  const auto all = arcs(g);
  std::vector<NodeId> stack{u};
  std::vector<bool> on(static_cast<std::size_t>(g.node_count()), false);
  on[u] = true;
  std::function<void()> go = [&] {
    if (stack.back() == v) {
      out.push_back(stack);
      return;
    }
    for (const auto& a : all) {
      if (a.from != stack.back() || on[a.to]) continue;
      on[a.to] = true;
      stack.push_back(a.to);
      go();
      stack.pop_back();
      on[a.to] = false;
    }
  };
  go();
  return out;
}

// Weight of a node sequence, or nullopt if some hop is not an edge.
inline Dist walk_weight(const Graph& g, const std::vector<NodeId>& nodes) {
  std::int64_t total = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    Dist hop;
    for (const auto& a : arcs(g)) {
      if (a.from == nodes[i] && a.to == nodes[i + 1]) hop = a.w;
    }
    if (!hop) return std::nullopt;
    total += *hop;
  }
  return total;
}

// Shortest simple u -> v paths by exhaustive search.
inline std::vector<std::vector<NodeId>> brute_shortest_paths(const Graph& g, NodeId u, NodeId v) {
  auto all = all_simple_paths(g, u, v);
  std::vector<std::vector<NodeId>> out;
  Dist best;
  for (auto& p : all) {
    const auto w = walk_weight(g, p);
    if (!best || *w < *best) {
      best = w;
      out.clear();
    }
    if (*w == *best) out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool is_bipartite(const Graph& g) {
  std::vector<int> side(static_cast<std::size_t>(g.node_count()), -1);
  const auto all = arcs(g);
  for (NodeId start = 0; start < g.node_count(); ++start) {
    if (side[start] != -1) continue;
    side[start] = 0;
    std::vector<NodeId> todo{start};
    while (!todo.empty()) {
      NodeId x = todo.back();
      todo.pop_back();
      for (const auto& a : all) {
        if (a.from != x) continue;
        if (side[a.to] == -1) {
          side[a.to] = 1 - side[x];
          todo.push_back(a.to);
        } else if (side[a.to] == side[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

// H preserves every pair's G distance and only uses G's edges.
inline bool preserves(const Graph& g, const Graph& h, const dpres::PairSet& pairs) {
  for (const auto& e : h.edges()) {
    bool found = false;
    for (const auto& f : g.edges()) found = found || (f.u == e.u && f.v == e.v && f.w == e.w);
    if (!found) return false;
  }
  const auto dg = floyd(g);
  const auto dh = floyd(h);
  for (const auto& p : pairs) {
    if (dg[p.source][p.target] != dh[p.source][p.target]) return false;
  }
  return true;
}

// Unordered triples of distinct arcs sharing a head, counted one by one.
inline std::uint64_t brute_triples(const Graph& h) {
  std::uint64_t count = 0;
  const auto& e = h.edges();
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = a + 1; b < e.size(); ++b)
      for (std::size_t c = b + 1; c < e.size(); ++c)
        if (e[a].v == e[b].v && e[b].v == e[c].v) ++count;
  return count;
}

inline bool brute_induced_matching(const Graph& g, const std::vector<std::pair<NodeId, NodeId>>& m) {
  std::set<NodeId> ends;
  for (const auto& [u, v] : m) {
    if (!ends.insert(u).second || !ends.insert(v).second) return false;
  }
  std::set<std::pair<NodeId, NodeId>> wanted;
  for (const auto& [u, v] : m) wanted.insert({std::min(u, v), std::max(u, v)});
  for (const auto& e : g.edges()) {
    if (ends.count(e.u) && ends.count(e.v) && !wanted.count({std::min(e.u, e.v), std::max(e.u, e.v)})) return false;
  }
  return true;
}

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace oracle
