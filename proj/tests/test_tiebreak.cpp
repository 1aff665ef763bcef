#include "doctest.h"

#include "dpres/generators.hpp"
#include "dpres/tiebreak.hpp"
#include "oracles.hpp"

using namespace dpres;

namespace {

Graph cycle4() { return Graph(4, false, false, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}}); }

// s = 0, x' = 1, x = 2, y = 3, y' = 4. The minimum-id BFS tree routes y'
// through x', which the repair loop must undo.
Graph diamond() { return Graph(5, false, false, {{0, 2, 1}, {0, 1, 1}, {2, 3, 1}, {1, 4, 1}, {2, 4, 1}}); }

std::vector<TreeEdge> edges_of(std::initializer_list<std::pair<NodeId, NodeId>> list) {
  std::vector<TreeEdge> out;
  for (auto [p, c] : list) out.push_back({p, c});
  std::sort(out.begin(), out.end());
  return out;
}

// Property 2 of lazy trees, checked directly from the raw edge list.
std::size_t crossing_pairs(const SourceTree& tree, const Graph& gb) {
  std::set<std::pair<NodeId, NodeId>> raw;
  for (const auto& e : gb.edges()) {
    raw.insert({e.u, e.v});
    raw.insert({e.v, e.u});
  }
  std::map<NodeId, int> kids;
  for (const auto& e : tree.edges) ++kids[e.parent];
  std::size_t count = 0;
  for (const auto& a : tree.edges)
    for (const auto& b : tree.edges) {
      if (!(a < b) || kids[a.parent] != 1 || kids[b.parent] != 1) continue;
      if (tree.layer[a.child] != tree.layer[b.child]) continue;
      if (raw.count({a.parent, b.child}) || raw.count({b.parent, a.child})) ++count;
    }
  return count;
}

}  // namespace

TEST_CASE("perturbed weights follow w * 2^m + 2^i") {
  auto single = perturb_weights(Graph(2, false, false, {{0, 1, 1}}));
  CHECK(single.edge(0).w == 3);

  Graph g(4, true, true, {{0, 1, 5}, {1, 2, 1}, {2, 3, 7}});
  auto p = perturb_weights(g);
  REQUIRE(p.edge_count() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    BigWeight expected = BigWeight(g.edge(i).w) * (BigWeight(1) << 3) + (BigWeight(1) << i);
    CHECK(p.edge(i).w == expected);
    CHECK(p.edge(i).u == g.edge(i).u);
  }

  auto wide = random_graph(10, 45, false, true, 1000, 3);
  auto big = perturb_weights(wide);
  CHECK(big.edge(44).w == BigWeight(wide.edge(44).w) * (BigWeight(1) << 45) + (BigWeight(1) << 44));
}

TEST_CASE("perturbation makes shortest paths unique and keeps them shortest") {
  auto c = perturb_weights(cycle4());
  CHECK(enumerate_shortest_paths(c, 0, 2, 10).size() == 1);

  auto g = random_connected_graph(30, 70, false, false, 1, 5);
  auto p = perturb_weights(g);
  const auto d = oracle::floyd(g);
  for (NodeId s = 0; s < 30; ++s)
    for (NodeId t = 0; t < 30; ++t) {
      if (s == t) continue;
      auto unique = enumerate_shortest_paths(p, s, t, 1);
      REQUIRE(unique.size() == 1);
      CHECK(oracle::walk_weight(g, unique[0].nodes) == d[s][t]);
    }
}

TEST_CASE("consistent_scheme examples") {
  Graph path(4, false, false, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  auto ps = consistent_scheme(path, PairSet(path, {{0, 3}}));
  CHECK(ps.path({0, 3}).nodes == std::vector<NodeId>{0, 1, 2, 3});

  auto c = cycle4();
  auto both = consistent_scheme(c, PairSet(c, {{0, 2}, {2, 0}}));
  auto fwd = both.path({0, 2}).nodes;
  auto back = both.path({2, 0}).nodes;
  std::reverse(back.begin(), back.end());
  CHECK(fwd == back);
  auto unique = enumerate_shortest_paths(perturb_weights(c), 0, 2, 1);
  CHECK(unique[0].nodes == fwd);

  Graph split(4, false, false, {{0, 1, 1}, {2, 3, 1}});
  CHECK_THROWS_AS(consistent_scheme(split, PairSet::unchecked({{0, 3}})), Disconnected);
}

TEST_CASE("check_consistency") {
  Graph path(3, false, false, {{0, 1, 1}, {1, 2, 1}});
  CHECK(check_consistency(consistent_scheme(path, PairSet(path, {{0, 2}}))).empty());

  // Two parallel routes 1-2-3 and 1-4-3; both stored paths are shortest but
  // the segment of pi(0,3) from 1 to 3 disagrees with pi(1,3).
  Graph g(5, false, false, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {1, 4, 1}, {4, 3, 1}});
  std::map<NodePair, Path> entries;
  entries[{0, 3}] = Path{{0, 1, 2, 3}, 3};
  entries[{1, 3}] = Path{{1, 4, 3}, 2};
  auto corrupted = PathSystem(g, entries);
  auto found = check_consistency(corrupted);
  REQUIRE(found.size() == 1);
  CHECK(found[0].outer == NodePair{0, 3});
  CHECK(found[0].inner == NodePair{1, 3});
}

TEST_CASE("PathSystem rejects paths that are not shortest") {
  auto c = cycle4();
  std::map<NodePair, Path> entries;
  entries[{0, 2}] = Path{{0, 1, 2}, 2};
  entries[{1, 2}] = Path{{1, 0, 3, 2}, 3};
  CHECK_THROWS_AS(PathSystem(c, entries), InvariantViolation);
  entries[{1, 2}] = Path{{1, 2}, 5};
  CHECK_THROWS_AS(PathSystem(c, entries), InvariantViolation);
  entries[{1, 2}] = Path{{1, 0}, 1};
  CHECK_THROWS_AS(PathSystem(c, entries), InvariantViolation);
  CHECK_NOTHROW(PathSystem::unchecked(c, entries));
}

TEST_CASE("consistent schemes over random instances") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const bool directed = seed % 2 == 0;
    const bool weighted = seed % 3 != 0;
    auto g = random_connected_graph(static_cast<NodeId>(8 + seed % 33), 20 + 2 * (seed % 40), directed, weighted, 6, seed);
    auto pairs = random_pairs(g, 20, seed + 1000);
    auto ps = consistent_scheme(g, pairs);
    CHECK(check_consistency(ps).empty());
    CHECK(ps.size() == pairs.size());

    // Subpath closure: every segment of a stored path is shortest.
    const auto d = oracle::floyd(g);
    for (const auto& [pair, path] : ps.entries()) {
      CHECK(oracle::walk_weight(g, path.nodes) == d[pair.source][pair.target]);
      for (std::size_t i = 0; i < path.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < path.nodes.size(); ++j) {
          std::vector<NodeId> seg(path.nodes.begin() + i, path.nodes.begin() + j + 1);
          CHECK(oracle::walk_weight(g, seg) == d[seg.front()][seg.back()]);
        }
    }

    // Same output on every run and for every pair order.
    std::vector<NodePair> reversed(pairs.begin(), pairs.end());
    std::reverse(reversed.begin(), reversed.end());
    CHECK(consistent_scheme(g, PairSet(g, reversed)) == ps);
    CHECK(consistent_scheme(g, pairs) == ps);
  }
}

TEST_CASE("lazy_scheme on a star") {
  Graph star(3, false, false, {{0, 1, 1}, {0, 2, 1}});
  auto pairs = PairSet(star, {{0, 1}, {0, 2}});
  auto trees = lazy_scheme(star, pairs);
  REQUIRE(trees.size() == 1);
  const auto& t = trees.at(0);
  CHECK(t.edges == edges_of({{0, 1}, {0, 2}}));
  CHECK(t.branching == t.edges);
  CHECK(check_lazy(trees, star, pairs).empty());
}

TEST_CASE("lazy_scheme repairs the diamond") {
  auto g = diamond();
  auto pairs = PairSet(g, {{0, 3}, {0, 4}});
  auto trees = lazy_scheme(g, pairs);
  const auto& t = trees.at(0);
  CHECK(t.edges == edges_of({{0, 2}, {2, 3}, {2, 4}}));
  CHECK(t.branching == edges_of({{2, 3}, {2, 4}}));
  CHECK(t.repairs == 1);
  CHECK(check_lazy(trees, g, pairs).empty());
  CHECK(crossing_pairs(t, g) == 0);

  SourceTree unrepaired = t;
  unrepaired.edges = edges_of({{0, 1}, {0, 2}, {1, 4}, {2, 3}});
  unrepaired.branching = branching_edges(unrepaired.edges);
  CHECK(crossing_pairs(unrepaired, g) == 1);
  std::map<NodeId, SourceTree> bad{{0, unrepaired}};
  auto found = check_lazy(bad, g, pairs);
  REQUIRE(found.size() == 1);
  CHECK(found[0].kind == "lazy");
  CHECK(found[0].source == 0);
}

TEST_CASE("check_lazy on trivial and broken trees") {
  Graph edge(2, false, false, {{0, 1, 1}});
  auto pairs = PairSet(edge, {{0, 1}});
  CHECK(check_lazy(lazy_scheme(edge, pairs), edge, pairs).empty());
  CHECK(check_lazy({}, edge, pairs).at(0).kind == "missing");

  auto g = diamond();
  auto dp = PairSet(g, {{0, 3}, {0, 4}});
  auto trees = lazy_scheme(g, dp);
  trees.at(0).branching.clear();
  CHECK(check_lazy(trees, g, dp).at(0).kind == "branching");

  trees = lazy_scheme(g, dp);
  trees.at(0).edges = edges_of({{0, 2}, {2, 3}});
  trees.at(0).branching = {};
  CHECK(check_lazy(trees, g, dp).at(0).kind == "distance");
}

TEST_CASE("lazy_scheme preconditions") {
  Graph triangle(3, false, false, {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}});
  CHECK_THROWS_AS(lazy_scheme(triangle, PairSet(triangle, {{0, 1}})), NotBipartite);
  CHECK_THROWS_AS(require_bipartite(triangle), NotBipartite);
  Graph directed(2, true, false, {{0, 1, 1}});
  CHECK_THROWS_AS(lazy_scheme(directed, PairSet(directed, {{0, 1}})), PreconditionFailed);
  Graph split(4, false, false, {{0, 1, 1}, {2, 3, 1}});
  CHECK_THROWS_AS(lazy_scheme(split, PairSet::unchecked({{0, 3}})), Disconnected);
}

TEST_CASE("lazy schemes over random bipartite instances") {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto left = static_cast<NodeId>(4 + seed % 17);
    const auto right = static_cast<NodeId>(4 + (seed * 7) % 17);
    auto g = random_bipartite_graph(left, right, static_cast<std::size_t>(left + right) * 2, seed);
    REQUIRE(oracle::is_bipartite(g));
    auto pairs = random_pairs(g, 15, seed + 7);
    if (pairs.empty()) continue;
    auto trees = lazy_scheme(g, pairs);
    CHECK(check_lazy(trees, g, pairs).empty());
    CHECK(trees == lazy_scheme(g, pairs));

    const auto d = oracle::floyd(g);
    const auto by_source = pairs.by_source();
    const auto budget = static_cast<std::size_t>(g.node_count()) * static_cast<std::size_t>(g.node_count());
    for (const auto& [s, tree] : trees) {
      CHECK(crossing_pairs(tree, g) == 0);
      CHECK(tree.repairs <= budget);
      const auto& targets = by_source.at(s);
      for (NodeId t : targets) {
        auto nodes = tree_path(tree, t);
        REQUIRE_FALSE(nodes.empty());
        CHECK(oracle::walk_weight(g, nodes) == d[s][t]);
      }
      std::map<NodeId, int> kids;
      std::set<NodeId> members;
      for (const auto& e : tree.edges) {
        ++kids[e.parent];
        members.insert(e.child);
      }
      std::size_t leaves = 0;
      for (NodeId v : members) leaves += kids.count(v) ? 0 : 1;
      CHECK(leaves <= targets.size());
      CHECK(tree.branching.size() <= 2 * targets.size());
    }
  }
}
