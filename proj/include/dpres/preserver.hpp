#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "dpres/graph.hpp"
#include "dpres/pairs.hpp"
#include "dpres/tiebreak.hpp"

namespace dpres {

/// Edge endpoints as stored in a Graph (u < v when undirected).
using EdgeKey = std::pair<NodeId, NodeId>;

/// A subgraph of the host plus, for each kept edge, the pair that owns it.
struct Preserver {
  Graph subgraph;
  PairSet demanded;
  std::map<EdgeKey, NodePair> provenance;
};

/// Size certificate of one pair group of the directed/weighted construction.
struct DwGroup {
  std::size_t first_pair = 0;
  std::size_t size = 0;
  /// Edges of the group's paths, each oriented away from its pair's source.
  std::size_t oriented_edges = 0;
  std::uint64_t branching_triples = 0;
};

struct DwPreserver {
  Preserver preserver;
  std::size_t group_size = 0;
  std::vector<DwGroup> groups;
};

/// Smallest g with g^3 >= n (at least 1).
std::size_t cube_root_ceil(std::size_t n);

/// C(k, 3).
std::uint64_t choose3(std::uint64_t k);

/// Splits P into consecutive groups of ceil(n^(1/3)) pairs and unions the
/// consistent-scheme paths of every group.
DwPreserver build_dw_preserver(const Graph& g, const PairSet& pairs);

/// Union of the given paths with every path oriented away from its first node.
Graph oriented_union(const Graph& host, const std::vector<const Path*>& paths);

/// Sum over nodes of C(indeg, 3). Throws NotDirected for undirected input.
std::uint64_t count_branching_triples(const Graph& h);

enum class Parity { Even, Odd };

/// Two-copy bipartite double cover. Node x maps to x (copy 1) and x + n
/// (copy 2); pair i of the original yields lifted pairs 2i and 2i + 1.
struct LiftResult {
  NodeId original_nodes = 0;
  Graph lifted;
  PairSet lifted_pairs;
  std::vector<NodePair> origin;
  std::map<NodePair, Parity> parity;
};

LiftResult bipartite_lift(const Graph& g, const PairSet& pairs);

/// Collapses a subgraph of the lift back onto the original node set.
Graph contract(const Graph& h_lift, const LiftResult& lift);

/// Non-branching edges split by (owner source, dist(owner, near end) mod 3).
struct MatchingPartition {
  std::map<std::pair<NodeId, int>, std::vector<EdgeKey>> classes;
  std::vector<EdgeKey> leftover_branching;

  std::size_t class_edge_total() const;
};

/// Throws OwnerNotFound when an edge of h_lift lies in no tree.
MatchingPartition matching_partition(const std::map<NodeId, SourceTree>& trees, const Graph& h_lift);

/// True iff `matching` is a matching whose endpoint-induced subgraph of gb has
/// no other edges.
bool check_induced_matching(const Graph& gb, const std::vector<EdgeKey>& matching);

struct UuPreserver {
  Preserver preserver;
  LiftResult lift;
  /// Union of the lazy trees in the lifted graph.
  Graph lifted_preserver;
  std::map<NodeId, SourceTree> trees;
  MatchingPartition partition;
};

/// Lift, lazy tiebreaking on the lift, union of trees, contraction.
UuPreserver build_uu_preserver(const Graph& g, const PairSet& pairs);

struct DistanceMismatch {
  NodePair pair;
  Distance in_graph;
  Distance in_subgraph;
};

struct PreserverReport {
  std::vector<DistanceMismatch> distance_violations;
  /// Edges of the candidate that are missing from the host (or reweighted).
  std::vector<Edge> foreign_edges;

  bool ok() const { return distance_violations.empty() && foreign_edges.empty(); }
};

PreserverReport verify_preserver(const Graph& g, const Graph& h, const PairSet& pairs);

}  // namespace dpres
