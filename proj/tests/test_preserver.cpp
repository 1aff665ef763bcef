#include "doctest.h"

#include "dpres/generators.hpp"
#include "dpres/preserver.hpp"
#include "oracles.hpp"

using namespace dpres;

namespace {

Graph path_graph(NodeId n) {
  std::vector<Edge> edges;
  for (NodeId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1});
  return Graph(n, false, false, edges);
}

Graph diamond() { return Graph(5, false, false, {{0, 2, 1}, {0, 1, 1}, {2, 3, 1}, {1, 4, 1}, {2, 4, 1}}); }

// Directed graph with `k` arcs entering node 0.
Graph fan_in(NodeId k) {
  std::vector<Edge> edges;
  for (NodeId i = 1; i <= k; ++i) edges.push_back({i, 0, 1});
  return Graph(k + 1, true, false, edges);
}

std::vector<EdgeKey> keys(const Graph& g) {
  std::vector<EdgeKey> out;
  for (const auto& e : g.edges()) out.push_back({e.u, e.v});
  return out;
}

}  // namespace

TEST_CASE("cube_root_ceil and choose3") {
  CHECK(cube_root_ceil(0) == 1);
  CHECK(cube_root_ceil(1) == 1);
  CHECK(cube_root_ceil(8) == 2);
  CHECK(cube_root_ceil(9) == 3);
  CHECK(cube_root_ceil(64) == 4);
  CHECK(cube_root_ceil(65) == 5);
  for (std::size_t n = 1; n < 3000; ++n) {
    const auto g = cube_root_ceil(n);
    CHECK(g * g * g >= n);
    CHECK((g - 1) * (g - 1) * (g - 1) < n);
  }
  for (std::uint64_t k = 0; k < 40; ++k) CHECK(choose3(k) == oracle::binomial(k, 3));
}

TEST_CASE("count_branching_triples") {
  CHECK(count_branching_triples(fan_in(3)) == 1);
  CHECK(count_branching_triples(fan_in(2)) == 0);
  CHECK(count_branching_triples(fan_in(4)) == 4);
  CHECK_THROWS_AS(count_branching_triples(path_graph(3)), NotDirected);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = random_graph(12, 60, true, false, 1, seed);
    CHECK(count_branching_triples(g) == oracle::brute_triples(g));
  }
}

TEST_CASE("build_dw_preserver examples") {
  auto line = path_graph(10);
  auto h = build_dw_preserver(line, PairSet(line, {{0, 9}}));
  CHECK(h.preserver.subgraph == line);

  Graph cyc(4, true, false, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 0, 1}});
  auto c = build_dw_preserver(cyc, PairSet(cyc, {{0, 2}, {1, 3}}));
  CHECK(keys(c.preserver.subgraph) == std::vector<EdgeKey>{{0, 1}, {1, 2}, {2, 3}});
  CHECK(c.preserver.provenance.at({0, 1}) == NodePair{0, 2});
  CHECK(c.preserver.provenance.at({1, 2}) == NodePair{0, 2});
  CHECK(c.preserver.provenance.at({2, 3}) == NodePair{1, 3});

  auto g = random_connected_graph(64, 600, true, true, 50, 64);
  auto pairs = random_pairs(g, 4, 65);
  auto dw = build_dw_preserver(g, pairs);
  CHECK(dw.group_size == 4);
  CHECK(dw.groups.size() == 1);
  CHECK(oracle::preserves(g, dw.preserver.subgraph, pairs));
  CHECK(verify_preserver(g, dw.preserver.subgraph, pairs).ok());
  CHECK(dw.preserver.subgraph.edge_count() <= 2 * 64 + 4);
}

TEST_CASE("dw group certificates match an independent recount") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto n = static_cast<NodeId>(10 + seed % 40);
    auto g = random_connected_graph(n, static_cast<std::size_t>(n) * 4, seed % 4 != 0, seed % 2 == 0, 9, seed);
    auto pairs = random_pairs(g, 3 + seed % 15, seed * 31);
    auto dw = build_dw_preserver(g, pairs);
    CHECK(oracle::preserves(g, dw.preserver.subgraph, pairs));

    std::size_t covered = 0;
    for (const auto& grp : dw.groups) {
      CHECK(grp.first_pair == covered);
      covered += grp.size;
      std::vector<NodePair> group(pairs.begin() + grp.first_pair, pairs.begin() + grp.first_pair + grp.size);
      auto scheme = consistent_scheme(g, PairSet(g, group));
      std::set<EdgeKey> arcs;
      for (const auto& [pair, path] : scheme.entries()) {
        for (std::size_t i = 0; i + 1 < path.nodes.size(); ++i) arcs.insert({path.nodes[i], path.nodes[i + 1]});
      }
      std::vector<Edge> list;
      for (auto [u, v] : arcs) list.push_back({u, v, 1});
      Graph oriented(n, true, false, list);
      CHECK(grp.oriented_edges == arcs.size());
      CHECK(grp.branching_triples == oracle::brute_triples(oriented));
      CHECK(grp.branching_triples <= oracle::binomial(grp.size, 3));
      CHECK(grp.oriented_edges <= 2 * static_cast<std::uint64_t>(n) + grp.branching_triples);
    }
    CHECK(covered == pairs.size());

    // Every kept edge is owned by a pair whose stored path uses it.
    CHECK(dw.preserver.provenance.size() == dw.preserver.subgraph.edge_count());
  }
}

TEST_CASE("oriented_union orients paths away from their source") {
  auto line = path_graph(4);
  Path forward{{0, 1, 2}, 2};
  Path backward{{3, 2, 1}, 2};
  auto u = oriented_union(line, {&forward, &backward});
  CHECK(u.directed());
  CHECK(keys(u) == std::vector<EdgeKey>{{0, 1}, {1, 2}, {2, 1}, {3, 2}});
}

TEST_CASE("bipartite_lift examples") {
  Graph edge(2, false, false, {{0, 1, 1}});
  auto odd = bipartite_lift(edge, PairSet(edge, {{0, 1}}));
  CHECK(odd.lifted.edge_count() == 2);
  CHECK(std::vector<NodePair>(odd.lifted_pairs.begin(), odd.lifted_pairs.end()) ==
        std::vector<NodePair>{{0, 3}, {2, 1}});
  CHECK(odd.parity.at({0, 1}) == Parity::Odd);

  auto line = path_graph(3);
  auto even = bipartite_lift(line, PairSet(line, {{0, 2}}));
  CHECK(std::vector<NodePair>(even.lifted_pairs.begin(), even.lifted_pairs.end()) ==
        std::vector<NodePair>{{0, 2}, {3, 5}});
  CHECK(even.parity.at({0, 2}) == Parity::Even);
  CHECK(even.origin == std::vector<NodePair>{{0, 2}, {0, 2}});

  Graph directed(2, true, false, {{0, 1, 1}});
  CHECK_THROWS_AS(bipartite_lift(directed, PairSet(directed, {{0, 1}})), PreconditionFailed);
  Graph split(4, false, false, {{0, 1, 1}, {2, 3, 1}});
  CHECK_THROWS_AS(bipartite_lift(split, PairSet::unchecked({{0, 3}})), Disconnected);
}

TEST_CASE("lifted distances equal original distances") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto g = random_connected_graph(30, 45 + seed, false, false, 1, seed);
    auto pairs = random_pairs(g, 10, seed + 3);
    auto lift = bipartite_lift(g, pairs);
    CHECK(oracle::is_bipartite(lift.lifted));
    CHECK(lift.lifted_pairs.size() == 2 * pairs.size());
    const auto d = oracle::floyd(g);
    const auto dl = oracle::floyd(lift.lifted);
    for (std::size_t i = 0; i < lift.lifted_pairs.size(); ++i) {
      const auto& lp = lift.lifted_pairs[i];
      const auto& op = lift.origin[i];
      CHECK(dl[lp.source][lp.target] == d[op.source][op.target]);
    }
  }
}

TEST_CASE("contract") {
  Graph edge(2, false, false, {{0, 1, 1}});
  auto lift = bipartite_lift(edge, PairSet(edge, {{0, 1}}));
  CHECK(contract(lift.lifted, lift) == edge);
  CHECK(contract(Graph(4, false, false, {}), lift) == Graph(2, false, false, {}));
  CHECK_THROWS_AS(contract(Graph(3, false, false, {}), lift), ShapeMismatch);
  CHECK_THROWS_AS(contract(Graph(4, false, false, {{0, 1, 1}}), lift), ShapeMismatch);

  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = random_connected_graph(20, 35, false, false, 1, seed);
    auto pairs = random_pairs(g, 8, seed);
    auto l = bipartite_lift(g, pairs);
    auto h_lift = build_dw_preserver(l.lifted, l.lifted_pairs).preserver.subgraph;
    auto h = contract(h_lift, l);
    CHECK(oracle::preserves(g, h, pairs));
    CHECK(h.edge_count() <= h_lift.edge_count());
  }
}

TEST_CASE("build_uu_preserver examples") {
  auto line = path_graph(6);
  auto p = build_uu_preserver(line, PairSet(line, {{0, 5}}));
  CHECK(p.preserver.subgraph == line);

  auto g = diamond();
  auto d = build_uu_preserver(g, PairSet(g, {{0, 3}, {0, 4}}));
  CHECK(keys(d.preserver.subgraph) == std::vector<EdgeKey>{{0, 2}, {2, 3}, {2, 4}});
  CHECK(verify_preserver(g, d.preserver.subgraph, d.preserver.demanded).ok());
}

TEST_CASE("matching_partition examples") {
  Graph edge(2, false, false, {{0, 1, 1}});
  auto pairs = PairSet(edge, {{0, 1}});
  auto trees = lazy_scheme(edge, pairs);
  auto part = matching_partition(trees, edge);
  CHECK(part.leftover_branching.empty());
  REQUIRE(part.classes.size() == 1);
  CHECK(part.classes.at({0, 0}) == std::vector<EdgeKey>{{0, 1}});

  auto g = diamond();
  auto dt = lazy_scheme(g, PairSet(g, {{0, 3}, {0, 4}}));
  Graph h(5, false, false, {{0, 2, 1}, {2, 3, 1}, {2, 4, 1}});
  auto dp = matching_partition(dt, h);
  CHECK(dp.leftover_branching == std::vector<EdgeKey>{{2, 3}, {2, 4}});
  REQUIRE(dp.classes.size() == 1);
  CHECK(dp.classes.at({0, 0}) == std::vector<EdgeKey>{{0, 2}});

  CHECK_THROWS_AS(matching_partition(dt, Graph(5, false, false, {{0, 1, 1}})), OwnerNotFound);
}

TEST_CASE("check_induced_matching") {
  Graph g(4, false, false, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  CHECK(check_induced_matching(g, {{0, 1}}));
  CHECK_FALSE(check_induced_matching(g, {{0, 1}, {1, 2}}));
  CHECK_FALSE(check_induced_matching(g, {{0, 1}, {2, 3}}));
  Graph gap(4, false, false, {{0, 1, 1}, {2, 3, 1}});
  CHECK(check_induced_matching(gap, {{0, 1}, {2, 3}}));
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    auto r = random_graph(10, 12, false, false, 1, seed);
    std::vector<EdgeKey> m;
    for (const auto& e : r.edges()) {
      if (m.size() < 3) m.push_back({e.u, e.v});
    }
    CHECK(check_induced_matching(r, m) == oracle::brute_induced_matching(r, m));
  }
}

TEST_CASE("verify_preserver") {
  auto line = path_graph(4);
  auto pairs = PairSet(line, {{0, 3}});
  CHECK(verify_preserver(line, line, pairs).ok());
  auto cut = verify_preserver(line, line.without_edge(1), pairs);
  REQUIRE(cut.distance_violations.size() == 1);
  CHECK(cut.distance_violations[0].pair == NodePair{0, 3});
  CHECK(cut.distance_violations[0].in_graph == 3);
  CHECK_FALSE(cut.distance_violations[0].in_subgraph.has_value());

  Graph extra(4, false, false, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}});
  auto foreign = verify_preserver(line, extra, PairSet(line, {{0, 1}}));
  REQUIRE(foreign.foreign_edges.size() == 1);
  CHECK(foreign.foreign_edges[0].u == 0);
  CHECK(foreign.foreign_edges[0].v == 3);
  CHECK_THROWS_AS(verify_preserver(line, path_graph(3), pairs), ShapeMismatch);
}

TEST_CASE("uu preservers and their partitions over random instances") {
  for (std::uint64_t seed = 1; seed <= 60; ++seed) {
    const auto n = static_cast<NodeId>(6 + seed % 35);
    auto g = random_connected_graph(n, static_cast<std::size_t>(n) + seed % 40, false, false, 1, seed);
    auto pairs = random_pairs(g, 1 + seed % 20, seed + 99);
    auto uu = build_uu_preserver(g, pairs);
    CHECK(oracle::preserves(g, uu.preserver.subgraph, pairs));
    CHECK(uu.preserver.subgraph.edge_count() <= uu.lifted_preserver.edge_count());
    CHECK(check_lazy(uu.trees, uu.lift.lifted, uu.lift.lifted_pairs).empty());

    // Classes and leftover branching split the lifted preserver exactly.
    std::multiset<EdgeKey> split(uu.partition.leftover_branching.begin(), uu.partition.leftover_branching.end());
    const auto d = oracle::floyd(uu.lift.lifted);
    for (const auto& [key, edges] : uu.partition.classes) {
      CHECK(oracle::brute_induced_matching(uu.lift.lifted, edges));
      for (const auto& e : edges) {
        split.insert(e);
        const auto near = std::min(*d[key.first][e.first], *d[key.first][e.second]);
        CHECK(near % 3 == key.second);
      }
    }
    const auto all = keys(uu.lifted_preserver);
    CHECK(std::vector<EdgeKey>(split.begin(), split.end()) == all);
    CHECK(uu.partition.classes.size() <= 3 * 2 * static_cast<std::size_t>(n));

    std::size_t branching = 0;
    for (const auto& [s, tree] : uu.trees) branching += tree.branching.size();
    CHECK(branching <= 2 * uu.lift.lifted_pairs.size());
    CHECK(uu.partition.leftover_branching.size() <= branching);

    // Deterministic.
    CHECK(build_uu_preserver(g, pairs).preserver.subgraph == uu.preserver.subgraph);
  }
}
