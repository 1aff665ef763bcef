#pragma once

#include <map>
#include <string>
#include <vector>

#include "dpres/graph.hpp"
#include "dpres/pairs.hpp"
#include "dpres/shortest_paths.hpp"

namespace dpres {

/// Reweights edge i to w(e) * 2^m + 2^i, where m is the edge count.
///
/// Distinct edge sets get distinct perturbed totals, and the high part
/// dominates, so the result has a unique shortest path between any two nodes
/// and that path is also shortest in g.
PerturbedGraph perturb_weights(const Graph& g);

/// One stored shortest path per demanded ordered pair.
class PathSystem {
 public:
  /// Throws InvariantViolation unless every path runs from its pair's source
  /// to its target and is shortest in `host`.
  PathSystem(Graph host, std::map<NodePair, Path> entries);

  /// No validation; lets tests build corrupted systems.
  static PathSystem unchecked(Graph host, std::map<NodePair, Path> entries);

  const Graph& host() const noexcept { return host_; }
  const std::map<NodePair, Path>& entries() const noexcept { return entries_; }
  const Path& path(const NodePair& p) const { return entries_.at(p); }
  bool contains(const NodePair& p) const { return entries_.count(p) != 0; }
  std::size_t size() const noexcept { return entries_.size(); }

  friend bool operator==(const PathSystem&, const PathSystem&) = default;

 private:
  PathSystem() = default;

  Graph host_;
  std::map<NodePair, Path> entries_;
};

/// Picks, for every pair, the unique shortest path of perturb_weights(g).
/// Throws Disconnected for an unreachable pair.
PathSystem consistent_scheme(const Graph& g, const PairSet& pairs);

/// A stored path pi(w, z) whose x..y segment differs from the stored pi(x, y).
struct ConsistencyViolation {
  NodePair outer;
  NodePair inner;

  friend auto operator<=>(const ConsistencyViolation&, const ConsistencyViolation&) = default;
};

std::vector<ConsistencyViolation> check_consistency(const PathSystem& ps);

/// Directed tree edge, oriented away from the tree's source.
struct TreeEdge {
  NodeId parent = 0;
  NodeId child = 0;

  friend auto operator<=>(const TreeEdge&, const TreeEdge&) = default;
};

/// T_s: the union of the chosen paths for P_s.
struct SourceTree {
  NodeId source = 0;
  /// Sorted by (parent, child).
  std::vector<TreeEdge> edges;
  /// layer[v] = dist(source, v) in the host graph.
  std::vector<Distance> layer;
  /// Edges leaving nodes of out-degree >= 2; sorted.
  std::vector<TreeEdge> branching;
  /// Reroutes applied by the lazy repair loop.
  std::size_t repairs = 0;

  friend bool operator==(const SourceTree&, const SourceTree&) = default;
};

/// Branching edges of a tree given by its oriented edges.
std::vector<TreeEdge> branching_edges(const std::vector<TreeEdge>& edges);

/// Node sequence from tree.source to `target` following tree edges; empty if
/// target is not in the tree.
std::vector<NodeId> tree_path(const SourceTree& tree, NodeId target);

/// Per-source shortest-path trees satisfying the lazy property.
///
/// Starts from a BFS tree with minimum-id parents pruned to the ancestors of
/// the targets, then reroutes until no two same-layer non-branching edges
/// (x, y), (x', y') admit a graph edge (x, y'). Each reroute hangs y' under x
/// and prunes what no pair uses any more; the deepest violation is repaired
/// first. Gb must be undirected, unweighted and bipartite.
std::map<NodeId, SourceTree> lazy_scheme(const Graph& gb, const PairSet& pairs);

struct LazyViolation {
  NodeId source = 0;
  /// "missing", "tree", "distance", "branching" or "lazy".
  std::string kind;
  std::string detail;
};

std::vector<LazyViolation> check_lazy(const std::map<NodeId, SourceTree>& trees, const Graph& gb,
                                      const PairSet& pairs);

/// Throws NotBipartite when gb has an odd cycle.
void require_bipartite(const Graph& gb);

}  // namespace dpres
