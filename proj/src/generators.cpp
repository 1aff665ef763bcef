#include "dpres/generators.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "dpres/lowerbound.hpp"
#include "dpres/shortest_paths.hpp"

namespace dpres {

namespace {

using Rng = std::mt19937_64;

NodeId pick(Rng& rng, NodeId lo, NodeId hi) {
  return std::uniform_int_distribution<NodeId>(lo, hi)(rng);
}

Weight pick_weight(Rng& rng, bool weighted, Weight max_weight) {
  if (!weighted) return 1;
  return std::uniform_int_distribution<Weight>(1, std::max<Weight>(1, max_weight))(rng);
}

std::size_t max_edges(NodeId n, bool directed) {
  const auto k = static_cast<std::size_t>(n);
  return directed ? k * (k - (k > 0 ? 1 : 0)) : k * (k - (k > 0 ? 1 : 0)) / 2;
}

// Fills `edges` with random extra edges until it holds m of them.
void add_random_edges(Rng& rng, NodeId n, std::size_t m, bool directed, bool weighted, Weight max_weight,
                      std::set<std::pair<NodeId, NodeId>>& seen, std::vector<Edge>& edges) {
  m = std::min(m, max_edges(n, directed));
  while (edges.size() < m) {
    NodeId u = pick(rng, 0, n - 1);
    NodeId v = pick(rng, 0, n - 1);
    if (u == v) continue;
    auto key = directed ? std::pair(u, v) : std::pair(std::min(u, v), std::max(u, v));
    if (!seen.insert(key).second) continue;
    edges.push_back({u, v, pick_weight(rng, weighted, max_weight)});
  }
}

}  // namespace

Graph random_graph(NodeId n, std::size_t m, bool directed, bool weighted, Weight max_weight,
                   std::uint64_t seed) {
  Rng rng(seed);
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<Edge> edges;
  if (n > 1) add_random_edges(rng, n, m, directed, weighted, max_weight, seen, edges);
  return Graph(n, directed, weighted, std::move(edges));
}

Graph random_connected_graph(NodeId n, std::size_t m, bool directed, bool weighted, Weight max_weight,
                             std::uint64_t seed) {
  Rng rng(seed);
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<Edge> edges;
  if (n > 1) {
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    auto add = [&](NodeId u, NodeId v) {
      auto key = directed ? std::pair(u, v) : std::pair(std::min(u, v), std::max(u, v));
      if (seen.insert(key).second) edges.push_back({u, v, pick_weight(rng, weighted, max_weight)});
    };
    if (directed) {
      for (NodeId i = 0; i < n; ++i) add(order[i], order[(i + 1) % n]);
    } else {
      for (NodeId i = 1; i < n; ++i) add(order[pick(rng, 0, i - 1)], order[i]);
    }
    add_random_edges(rng, n, std::max(m, edges.size()), directed, weighted, max_weight, seen, edges);
  }
  return Graph(n, directed, weighted, std::move(edges));
}

Graph random_bipartite_graph(NodeId left, NodeId right, std::size_t m, std::uint64_t seed) {
  Rng rng(seed);
  m = std::min(m, static_cast<std::size_t>(left) * static_cast<std::size_t>(right));
  std::set<std::pair<NodeId, NodeId>> seen;
  std::vector<Edge> edges;
  while (edges.size() < m) {
    NodeId u = pick(rng, 0, left - 1);
    NodeId v = left + pick(rng, 0, right - 1);
    if (seen.insert({u, v}).second) edges.push_back({u, v, 1});
  }
  return Graph(left + right, false, false, std::move(edges));
}

PairSet random_pairs(const Graph& g, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<NodePair> candidates;
  for (NodeId s = 0; s < g.node_count(); ++s) {
    const auto d = distances_from(g, s);
    for (NodeId t = 0; t < g.node_count(); ++t) {
      if (t != s && d[t]) candidates.push_back({s, t});
    }
  }
  std::shuffle(candidates.begin(), candidates.end(), rng);
  candidates.resize(std::min(count, candidates.size()));
  return PairSet(g, std::move(candidates));
}

std::pair<Graph, PairSet> random_disjoint_system(std::size_t paths, std::size_t min_len,
                                                 std::size_t max_len, std::size_t merges,
                                                 std::uint64_t seed) {
  if (paths < 1 || min_len < 1 || max_len < min_len) {
    throw PreconditionFailed("random system needs paths >= 1 and 1 <= min_len <= max_len");
  }
  Rng rng(seed);
  std::vector<Edge> edges;
  std::vector<NodePair> demand;
  std::vector<std::size_t> owner;
  NodeId n = 0;
  for (std::size_t i = 0; i < paths; ++i) {
    const auto len = static_cast<NodeId>(
        std::uniform_int_distribution<std::size_t>(min_len, max_len)(rng));
    for (NodeId j = 0; j <= len; ++j) {
      owner.push_back(i);
      if (j < len) edges.push_back({n + j, n + j + 1, 1});
    }
    demand.push_back({n, n + len});
    n += len + 1;
  }

  // Node ids are never reused; merged-away nodes stay isolated until the end.
  std::vector<NodeId> alias(static_cast<std::size_t>(n));
  std::iota(alias.begin(), alias.end(), 0);
  for (std::size_t attempt = 0; attempt < merges; ++attempt) {
    const NodeId a = pick(rng, 0, n - 1);
    const NodeId b = pick(rng, 0, n - 1);
    if (alias[a] != a || alias[b] != b || owner[a] == owner[b]) continue;
    auto remap = [&](NodeId x) { return x == b ? a : x; };
    std::vector<Edge> trial_edges;
    std::set<std::pair<NodeId, NodeId>> seen;
    bool clean = true;
    for (const auto& e : edges) {
      NodeId u = remap(e.u);
      NodeId v = remap(e.v);
      if (u == v || !seen.insert({std::min(u, v), std::max(u, v)}).second) {
        clean = false;
        break;
      }
      trial_edges.push_back({u, v, 1});
    }
    std::vector<NodePair> trial_demand;
    for (const auto& p : demand) trial_demand.push_back({remap(p.source), remap(p.target)});
    if (!clean || std::set<NodePair>(trial_demand.begin(), trial_demand.end()).size() != trial_demand.size()) {
      continue;
    }
    try {
      Graph trial(n, false, false, trial_edges);
      disjoint_system_paths(trial, PairSet(trial, trial_demand));
    } catch (const Error&) {
      continue;
    }
    alias[b] = a;
    edges = std::move(trial_edges);
    demand = std::move(trial_demand);
  }

  std::vector<NodeId> compact(static_cast<std::size_t>(n), -1);
  NodeId next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (alias[v] == v) compact[v] = next++;
  }
  for (auto& e : edges) e = {compact[e.u], compact[e.v], 1};
  for (auto& p : demand) p = {compact[p.source], compact[p.target]};
  Graph g(next, false, false, std::move(edges));
  PairSet ps(g, std::move(demand));
  return {std::move(g), std::move(ps)};
}

}  // namespace dpres
