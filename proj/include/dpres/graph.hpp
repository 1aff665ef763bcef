#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "dpres/errors.hpp"

namespace dpres {

using NodeId = std::int32_t;
using Weight = std::int64_t;
/// Arbitrary-precision weight used by perturbed graphs.
using BigWeight = boost::multiprecision::cpp_int;

template <class W>
struct BasicEdge {
  NodeId u = 0;
  NodeId v = 0;
  W w = 1;

  friend bool operator==(const BasicEdge& a, const BasicEdge& b) {
    return a.u == b.u && a.v == b.v && a.w == b.w;
  }
};

/// Immutable graph with exact integer weights.
///
/// Node ids are 0..n-1. Undirected edges are stored canonically with u < v
/// and the edge list is kept sorted by (u, v), so the index of an edge is a
/// deterministic function of the edge set. Weights are >= 1 and forced to 1
/// for unweighted graphs.
template <class W>
class BasicGraph {
 public:
  using weight_type = W;
  using Edge = BasicEdge<W>;

  /// Adjacency entry: neighbour plus index into edges().
  struct Arc {
    NodeId to = 0;
    std::size_t edge = 0;
  };

  BasicGraph() { build_adjacency(); }

  BasicGraph(NodeId n, bool directed, bool weighted, std::vector<Edge> edges)
      : n_(n), directed_(directed), weighted_(weighted), edges_(std::move(edges)) {
    if (n_ < 0) throw InvariantViolation("negative node count");
    for (auto& e : edges_) {
      if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
        throw InvariantViolation("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") has an endpoint outside 0.." + std::to_string(n_ - 1));
      }
      if (e.u == e.v) throw InvariantViolation("self-loop at node " + std::to_string(e.u));
      if (!weighted_) {
        e.w = 1;
      } else if (e.w < 1) {
        throw InvariantViolation("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
                                 ") has non-positive weight");
      }
      if (!directed_ && e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
      return std::pair(a.u, a.v) < std::pair(b.u, b.v);
    });
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v) {
        throw InvariantViolation("duplicate edge (" + std::to_string(edges_[i].u) + "," +
                                 std::to_string(edges_[i].v) + ")");
      }
    }
    build_adjacency();
  }

  NodeId node_count() const noexcept { return n_; }
  bool directed() const noexcept { return directed_; }
  bool weighted() const noexcept { return weighted_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(std::size_t i) const { return edges_.at(i); }

  bool valid_node(NodeId u) const noexcept { return u >= 0 && u < n_; }
  void check_node(NodeId u) const {
    if (!valid_node(u)) {
      throw InvalidNode("node " + std::to_string(u) + " outside 0.." + std::to_string(n_ - 1));
    }
  }

  /// Arcs leaving u (all incident edges when undirected), sorted by neighbour.
  std::span<const Arc> out_arcs(NodeId u) const {
    return {out_.data() + out_offset_[u], out_.data() + out_offset_[u + 1]};
  }
  /// Arcs entering u (same as out_arcs when undirected), sorted by neighbour.
  std::span<const Arc> in_arcs(NodeId u) const {
    if (!directed_) return out_arcs(u);
    return {in_.data() + in_offset_[u], in_.data() + in_offset_[u + 1]};
  }

  std::size_t out_degree(NodeId u) const { return out_arcs(u).size(); }
  std::size_t in_degree(NodeId u) const { return in_arcs(u).size(); }

  /// Index of the edge u->v (either orientation when undirected).
  std::optional<std::size_t> find_edge(NodeId u, NodeId v) const {
    if (!valid_node(u) || !valid_node(v)) return std::nullopt;
    auto arcs = out_arcs(u);
    auto it = std::lower_bound(arcs.begin(), arcs.end(), v,
                               [](const Arc& a, NodeId x) { return a.to < x; });
    if (it == arcs.end() || it->to != v) return std::nullopt;
    return it->edge;
  }
  bool has_edge(NodeId u, NodeId v) const { return find_edge(u, v).has_value(); }

  std::optional<W> edge_weight(NodeId u, NodeId v) const {
    auto i = find_edge(u, v);
    if (!i) return std::nullopt;
    return edges_[*i].w;
  }

  /// Same node set and flags, edges restricted to the given indices.
  BasicGraph edge_subgraph(std::span<const std::size_t> indices) const {
    std::vector<Edge> kept;
    kept.reserve(indices.size());
    for (auto i : indices) kept.push_back(edges_.at(i));
    return BasicGraph(n_, directed_, weighted_, std::move(kept));
  }

  /// Copy with extra edges added.
  BasicGraph with_edges(std::span<const Edge> extra) const {
    std::vector<Edge> all = edges_;
    all.insert(all.end(), extra.begin(), extra.end());
    return BasicGraph(n_, directed_, weighted_, std::move(all));
  }

  /// Copy with the edge at index i removed.
  BasicGraph without_edge(std::size_t i) const {
    std::vector<Edge> kept = edges_;
    kept.erase(kept.begin() + static_cast<std::ptrdiff_t>(i));
    return BasicGraph(n_, directed_, weighted_, std::move(kept));
  }

  friend bool operator==(const BasicGraph& a, const BasicGraph& b) {
    return a.n_ == b.n_ && a.directed_ == b.directed_ && a.weighted_ == b.weighted_ &&
           a.edges_ == b.edges_;
  }

 private:
  void build_adjacency() {
    auto fill = [&](std::vector<std::size_t>& offset, std::vector<Arc>& arcs, bool forward,
                    bool both) {
      std::vector<std::vector<Arc>> lists(static_cast<std::size_t>(n_));
      for (std::size_t i = 0; i < edges_.size(); ++i) {
        const auto& e = edges_[i];
        if (forward || both) lists[e.u].push_back({e.v, i});
        if (!forward || both) lists[e.v].push_back({e.u, i});
      }
      offset.assign(static_cast<std::size_t>(n_) + 1, 0);
      arcs.clear();
      for (NodeId u = 0; u < n_; ++u) {
        auto& l = lists[u];
        std::sort(l.begin(), l.end(), [](const Arc& a, const Arc& b) { return a.to < b.to; });
        arcs.insert(arcs.end(), l.begin(), l.end());
        offset[u + 1] = arcs.size();
      }
    };
    fill(out_offset_, out_, true, !directed_);
    if (directed_) fill(in_offset_, in_, false, false);
  }

  NodeId n_ = 0;
  bool directed_ = false;
  bool weighted_ = false;
  std::vector<Edge> edges_;
  std::vector<std::size_t> out_offset_;
  std::vector<Arc> out_;
  std::vector<std::size_t> in_offset_;
  std::vector<Arc> in_;
};

using Edge = BasicEdge<Weight>;
using Graph = BasicGraph<Weight>;
using PerturbedGraph = BasicGraph<BigWeight>;

/// A node sequence together with its total weight.
template <class W>
struct BasicPath {
  std::vector<NodeId> nodes;
  W length = 0;

  std::size_t hop_count() const { return nodes.empty() ? 0 : nodes.size() - 1; }

  friend bool operator==(const BasicPath& a, const BasicPath& b) {
    return a.nodes == b.nodes && a.length == b.length;
  }
};

using Path = BasicPath<Weight>;

/// Ordered demand pair.
struct NodePair {
  NodeId source = 0;
  NodeId target = 0;

  friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// Checks that `nodes` is a simple path in g and returns its weight.
/// Throws InvariantViolation otherwise.
template <class W>
W path_weight(const BasicGraph<W>& g, std::span<const NodeId> nodes) {
  if (nodes.empty()) throw InvariantViolation("empty path");
  std::vector<NodeId> seen(nodes.begin(), nodes.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw InvariantViolation("path repeats a node");
  }
  W total = 0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    auto w = g.edge_weight(nodes[i], nodes[i + 1]);
    if (!w) {
      throw InvariantViolation("no edge (" + std::to_string(nodes[i]) + "," +
                               std::to_string(nodes[i + 1]) + ")");
    }
    total += *w;
  }
  return total;
}

}  // namespace dpres
