#include "dpres/pairs.hpp"

#include <set>
#include <string>

#include "dpres/shortest_paths.hpp"

namespace dpres {

PairSet::PairSet(const Graph& host, std::vector<NodePair> pairs) : pairs_(std::move(pairs)) {
  std::set<NodePair> seen;
  std::map<NodeId, std::vector<Distance>> reach;
  for (const auto& p : pairs_) {
    host.check_node(p.source);
    host.check_node(p.target);
    const std::string name = "(" + std::to_string(p.source) + "," + std::to_string(p.target) + ")";
    if (p.source == p.target) throw InvariantViolation("pair " + name + " has equal endpoints");
    if (!seen.insert(p).second) throw InvariantViolation("duplicate pair " + name);
    auto it = reach.find(p.source);
    if (it == reach.end()) it = reach.emplace(p.source, distances_from(host, p.source)).first;
    if (!it->second[p.target]) throw Disconnected("pair " + name + " is not connected");
  }
}

PairSet PairSet::unchecked(std::vector<NodePair> pairs) {
  PairSet out;
  out.pairs_ = std::move(pairs);
  return out;
}

std::map<NodeId, std::vector<NodeId>> PairSet::by_source() const {
  std::map<NodeId, std::vector<NodeId>> out;
  for (const auto& p : pairs_) out[p.source].push_back(p.target);
  return out;
}

}  // namespace dpres
