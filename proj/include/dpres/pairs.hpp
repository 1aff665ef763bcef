#pragma once

#include <map>
#include <span>
#include <vector>

#include "dpres/graph.hpp"

namespace dpres {

/// Ordered demand pairs, validated against a host graph.
///
/// Insertion order is kept: grouping and first-wins ownership depend on it.
class PairSet {
 public:
  PairSet() = default;

  /// Throws InvalidNode, InvariantViolation (s == t or duplicates) or
  /// Disconnected (target unreachable from source in `host`).
  PairSet(const Graph& host, std::vector<NodePair> pairs);

  /// Skips all validation. Test and internal use only.
  static PairSet unchecked(std::vector<NodePair> pairs);

  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }
  const NodePair& operator[](std::size_t i) const { return pairs_[i]; }
  auto begin() const noexcept { return pairs_.begin(); }
  auto end() const noexcept { return pairs_.end(); }
  std::span<const NodePair> pairs() const noexcept { return pairs_; }

  /// P_s for every source s, targets in insertion order.
  std::map<NodeId, std::vector<NodeId>> by_source() const;

  friend bool operator==(const PairSet&, const PairSet&) = default;

 private:
  std::vector<NodePair> pairs_;
};

}  // namespace dpres
