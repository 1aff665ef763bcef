#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "dpres/graph.hpp"
#include "dpres/lowerbound.hpp"
#include "dpres/pairs.hpp"

namespace dpres {

// Graph file: first non-comment line `n=<int> directed=<0|1> weighted=<0|1>`,
// then one edge per line `u v [w]` and optional `layer <node> <int>` lines.
// Pairs file: one `s t` per line. Lines starting with '#' and blank lines are
// ignored in both.

struct ParsedGraph {
  Graph graph;
  /// Per-node layers; empty when the file has no layer lines.
  std::vector<int> layer;
};

/// Throws ParseError for malformed text or a duplicate edge and
/// InvariantViolation for input that parses but breaks a graph invariant.
ParsedGraph parse_graph(std::string_view text);

/// Throws ParseError for malformed lines.
std::vector<NodePair> parse_pair_list(std::string_view text);

struct ParsedInstance {
  Graph graph;
  PairSet pairs;
  std::vector<int> layer;
};

ParsedInstance parse_instance(std::string_view graph_text, std::string_view pairs_text);

/// Comments are written after the header, one `# ` line each.
std::string serialize_graph(const Graph& g, const std::vector<int>& layer = {},
                            const std::vector<std::string>& comments = {});

std::string serialize_pairs(const PairSet& pairs);

/// JSON sidecar holding everything of an ObstacleInstance except the graph
/// and the demanded pairs (mode, scale, subset, replacement map).
std::string serialize_obstacle_map(const ObstacleInstance& inst);

/// Rebuilds an ObstacleInstance from its graph, pairs and map files. Throws
/// ParseError for malformed JSON and InvariantViolation when the map does
/// not fit the graph or pairs.
ObstacleInstance parse_obstacle(std::string_view graph_text, std::string_view pairs_text,
                                std::string_view map_text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace dpres
