#pragma once

#include <cstdint>
#include <utility>

#include "dpres/graph.hpp"
#include "dpres/pairs.hpp"

namespace dpres {

/// Uniform random graph with (up to) m distinct edges; weights in
/// [1, max_weight] when weighted.
Graph random_graph(NodeId n, std::size_t m, bool directed, bool weighted, Weight max_weight,
                   std::uint64_t seed);

/// Like random_graph, but undirected graphs start from a random spanning
/// tree and directed graphs from a random Hamiltonian cycle, so every pair is
/// connected. m is raised to the size of that skeleton if needed.
Graph random_connected_graph(NodeId n, std::size_t m, bool directed, bool weighted, Weight max_weight,
                             std::uint64_t seed);

/// Bipartite graph with sides 0..left-1 and left..left+right-1.
Graph random_bipartite_graph(NodeId left, NodeId right, std::size_t m, std::uint64_t seed);

/// Up to `count` distinct connected ordered pairs, in random order.
PairSet random_pairs(const Graph& g, std::size_t count, std::uint64_t seed);

/// Random system whose pairs have unique, pairwise edge-disjoint shortest
/// paths covering the graph: disjoint paths with lengths in
/// [min_len, max_len], then up to `merges` attempts to glue two nodes of
/// different paths together, keeping only merges that preserve the property.
std::pair<Graph, PairSet> random_disjoint_system(std::size_t paths, std::size_t min_len,
                                                 std::size_t max_len, std::size_t merges,
                                                 std::uint64_t seed);

}  // namespace dpres
