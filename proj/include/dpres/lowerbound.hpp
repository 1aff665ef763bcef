#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "dpres/finding.hpp"
#include "dpres/graph.hpp"
#include "dpres/pairs.hpp"
#include "dpres/preserver.hpp"

namespace dpres {

inline constexpr std::size_t kDefaultCap = 10000;

/// Three-layered host of the obstacle product (layers 0, 1 = middle, 2).
struct OuterInstance {
  Graph graph;
  std::vector<int> layer;
  PairSet pairs;
  /// Common degree of the middle nodes.
  std::size_t degree = 0;
};

/// Each middle node gets degree/2 fresh first-layer and degree/2 fresh
/// last-layer neighbours, paired up through it. Unit weights.
/// First-layer nodes come first, then middle nodes, then last-layer nodes.
OuterInstance gen_outer(std::size_t middle_nodes, std::size_t degree, bool weighted);

/// Brute-force check of the three outer properties: uniform even middle
/// degree, a unique two-edge shortest path per pair, and every edge used by
/// exactly one pair. Also checks the layering. Empty result means valid.
std::vector<Finding> validate_outer(const OuterInstance& inst, std::size_t cap = kDefaultCap);

/// Gadget graph whose pairs have unique, pairwise edge-disjoint shortest
/// paths covering every edge.
struct InnerInstance {
  Graph graph;
  PairSet pairs;
  /// Number of layers when layered.
  std::optional<std::size_t> layer_count;
  /// Per-node layer (0-based); empty unless layered.
  std::vector<int> layer;
  std::map<NodePair, Weight> path_lengths;
};

/// Unique shortest path of every pair. Throws NotDisjointSystem unless the
/// paths are unique, pairwise edge-disjoint and cover every edge of g.
std::vector<Path> disjoint_system_paths(const Graph& g, const PairSet& pairs);

/// Builds an InnerInstance from a graph, pairs and optional layers,
/// validating the disjoint-system property.
InnerInstance make_inner(Graph g, PairSet pairs, std::vector<int> layer = {});

/// `pairs` vertex-disjoint paths with `length` edges each.
InnerInstance gen_inner(std::size_t pairs, std::size_t length, bool layered);

/// Empty iff the instance satisfies every inner invariant (and the layered
/// ones when a layer count is set).
std::vector<Finding> validate_inner(const InnerInstance& inst);

/// Cuts every pair path into pieces of floor(L/2) edges (L = mean pair
/// distance), drops remainders, then stacks floor(L/2) + 1 copies of the
/// graph joined along every edge in both orientations and demands
/// (q in copy 1, r in the last copy). Edges used by no demanded path are
/// dropped from the result.
InnerInstance layered_regularize(const Graph& g, const PairSet& pairs);

enum class ObstacleMode { Weighted, Unweighted };

/// One replaced two-edge path (c, v, z) and the inner pair it now crosses.
struct Correspondence {
  /// The demanded pair in the composed graph.
  NodePair demanded;
  /// First-layer endpoint c and last-layer endpoint z.
  NodeId first_end = 0;
  NodeId last_end = 0;
  /// Inner pair (q, r) in composed ids; q attaches to c, r to z.
  NodePair inner;
  Weight inner_distance = 0;
};

struct Replacement {
  NodeId middle = 0;
  NodeId first_node = 0;
  NodeId node_count = 0;
  std::vector<Correspondence> pairs;
};

struct ObstacleInstance {
  ObstacleMode mode = ObstacleMode::Weighted;
  Graph graph;
  /// Composed ids of the outer first and last layers.
  std::vector<NodeId> subset;
  PairSet demanded;
  std::vector<Replacement> replacements;
  /// Multiplier applied to outer edges (1 in unweighted mode).
  Weight scale = 1;
  /// Composed layers when every inner is layered; empty otherwise.
  std::vector<int> layer;
};

using InnerFactory = std::function<InnerInstance(NodeId middle, std::size_t degree)>;

struct ObstacleOptions {
  /// Replaces the default weighted scale 2 * max inner demanded distance.
  std::optional<Weight> scale_override;
};

/// Replaces every middle node of `outer` by a fresh inner copy. Weighted mode
/// multiplies outer edges by the scale; unweighted mode needs layered inners
/// with one common layer count and attaches c to the first inner layer and z
/// to the last.
ObstacleInstance obstacle_product(const OuterInstance& outer, const InnerFactory& inner_factory,
                                  ObstacleMode mode, const ObstacleOptions& options = {});

/// A shortest c -> z path that does not go c, q, (shortest q -> r inside the
/// designated copy), r, z.
struct StructureFinding {
  NodePair pair;
  std::vector<NodeId> path;
  std::string reason;
};

/// Throws CapExceeded when some pair has more than `cap` shortest paths.
std::vector<StructureFinding> check_path_structure(const ObstacleInstance& inst,
                                                   std::size_t cap = kDefaultCap);

/// Graph induced on the node range [first, first + count), renumbered from 0.
Graph induced_range(const Graph& g, NodeId first, NodeId count);

/// Edges every preserver of (graph, demanded) must keep: the attachment
/// edges and each inner pair's unique inner path. Throws PreconditionFailed
/// when the structure check fails or an inner pair's path is not unique.
std::vector<EdgeKey> forced_edges(const ObstacleInstance& inst, std::size_t cap = kDefaultCap);

std::size_t forced_edge_count(const ObstacleInstance& inst, std::size_t cap = kDefaultCap);

}  // namespace dpres
