#include "dpres/cli.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"

#include "dpres/errors.hpp"
#include "dpres/generators.hpp"
#include "dpres/io.hpp"
#include "dpres/lowerbound.hpp"
#include "dpres/preserver.hpp"
#include "dpres/report.hpp"
#include "dpres/tiebreak.hpp"

namespace dpres::cli {

namespace {

struct Options {
  std::string graph, pairs, subgraph, out, map;
  std::string mode, format = "json", kind;
  std::size_t cap = kDefaultCap;
  std::uint64_t seed = 1;

  // generators and lower-bound construction
  std::size_t nmid = 2, degree = 4, inner_len = 3;
  std::size_t nodes = 16, edges = 32, pair_count = 6;
  std::size_t paths = 3, min_len = 2, max_len = 5, merges = 20;
  Weight max_weight = 10;
  bool directed = false, weighted = false, layered = false, regularize = false;
  std::string outer_graph, outer_pairs, inner_graph, inner_pairs;
  std::optional<Weight> scale;
};

std::string show(const NodePair& p) { return std::to_string(p.source) + "->" + std::to_string(p.target); }

std::string show(const std::vector<NodeId>& nodes) {
  std::string s;
  for (auto v : nodes) s += (s.empty() ? "" : " ") + std::to_string(v);
  return s;
}

std::string show(const Distance& d) { return d ? std::to_string(*d) : "unreachable"; }

std::string load(Report& r, const std::string& key, const std::string& path) {
  if (path.empty()) throw UsageError("missing --" + key);
  auto text = read_file(path);
  r.inputs[key] = digest(text);
  return text;
}

void set_counts(Report& r, const Graph& g, std::size_t pairs) {
  r.metrics["node_count"] = g.node_count();
  r.metrics["edge_count"] = static_cast<std::int64_t>(g.edge_count());
  r.metrics["pair_count"] = static_cast<std::int64_t>(pairs);
}

void add_verify_findings(Report& r, const PreserverReport& check) {
  for (const auto& m : check.distance_violations) {
    r.violations.push_back({"distance", show(m.pair) + " graph " + show(m.in_graph) + " subgraph " + show(m.in_subgraph)});
  }
  for (const auto& e : check.foreign_edges) {
    r.violations.push_back({"foreign-edge", std::to_string(e.u) + " " + std::to_string(e.v) + " " + std::to_string(e.w)});
  }
}

void add_findings(Report& r, const std::string& prefix, const std::vector<Finding>& findings) {
  for (const auto& f : findings) r.violations.push_back({prefix + f.kind, f.detail});
}

std::vector<std::string> provenance_comments(const Preserver& p) {
  std::vector<std::string> out;
  for (const auto& [edge, pair] : p.provenance) {
    out.push_back("edge " + std::to_string(edge.first) + " " + std::to_string(edge.second) + " pair " +
                  std::to_string(pair.source) + " " + std::to_string(pair.target));
  }
  return out;
}

// Both builders, with their size certificates checked as violations.
void run_preserve(const Options& o, Report& r) {
  auto inst = parse_instance(load(r, "graph", o.graph), load(r, "pairs", o.pairs));
  const Graph& g = inst.graph;
  const auto n = static_cast<std::uint64_t>(g.node_count());
  Preserver pres;

  if (o.mode == "dw") {
    auto built = build_dw_preserver(g, inst.pairs);
    std::uint64_t max_triples = 0;
    for (const auto& grp : built.groups) {
      max_triples = std::max(max_triples, grp.branching_triples);
      const auto where = "group at pair " + std::to_string(grp.first_pair);
      if (grp.branching_triples > choose3(grp.size)) {
        r.violations.push_back({"branching-triples", where + " has " + std::to_string(grp.branching_triples)});
      }
      if (grp.oriented_edges > 2 * n + grp.branching_triples) {
        r.violations.push_back({"group-edges", where + " has " + std::to_string(grp.oriented_edges) + " edges"});
      }
    }
    const auto bound = built.groups.size() * (2 * n + choose3(built.group_size));
    if (built.preserver.subgraph.edge_count() > bound) {
      r.violations.push_back({"size-bound", std::to_string(built.preserver.subgraph.edge_count()) + " > " + std::to_string(bound)});
    }
    r.metrics["group_size"] = static_cast<std::int64_t>(built.group_size);
    r.metrics["group_count"] = static_cast<std::int64_t>(built.groups.size());
    r.metrics["max_group_triples"] = static_cast<std::int64_t>(max_triples);
    r.metrics["size_bound"] = static_cast<std::int64_t>(bound);
    pres = std::move(built.preserver);
  } else if (o.mode == "uu") {
    auto built = build_uu_preserver(g, inst.pairs);
    for (const auto& v : check_lazy(built.trees, built.lift.lifted, built.lift.lifted_pairs)) {
      r.violations.push_back({"lazy-" + v.kind, "source " + std::to_string(v.source) + ": " + v.detail});
    }
    std::size_t branching = 0, repairs = 0;
    for (const auto& [s, tree] : built.trees) {
      branching += tree.branching.size();
      repairs += tree.repairs;
    }
    for (const auto& [key, edges] : built.partition.classes) {
      if (!check_induced_matching(built.lift.lifted, edges)) {
        r.violations.push_back({"induced-matching", "class " + std::to_string(key.first) + "/" + std::to_string(key.second)});
      }
    }
    const auto lifted_n = static_cast<std::size_t>(built.lift.lifted.node_count());
    if (built.partition.classes.size() > 3 * lifted_n) {
      r.violations.push_back({"class-count", std::to_string(built.partition.classes.size())});
    }
    if (branching > 2 * built.lift.lifted_pairs.size()) {
      r.violations.push_back({"branching-edges", std::to_string(branching)});
    }
    r.metrics["lifted_edge_count"] = static_cast<std::int64_t>(built.lifted_preserver.edge_count());
    r.metrics["branching_edge_count"] = static_cast<std::int64_t>(branching);
    r.metrics["matching_class_count"] = static_cast<std::int64_t>(built.partition.classes.size());
    r.metrics["matching_edge_total"] = static_cast<std::int64_t>(built.partition.class_edge_total());
    r.metrics["lazy_repairs"] = static_cast<std::int64_t>(repairs);
    pres = std::move(built.preserver);
  } else {
    throw UsageError("--mode must be dw or uu");
  }

  add_verify_findings(r, verify_preserver(g, pres.subgraph, inst.pairs));
  set_counts(r, pres.subgraph, inst.pairs.size());
  r.metrics["host_edge_count"] = static_cast<std::int64_t>(g.edge_count());
  if (!o.out.empty()) write_file(o.out, serialize_graph(pres.subgraph, {}, provenance_comments(pres)));
}

void run_verify(const Options& o, Report& r) {
  auto inst = parse_instance(load(r, "graph", o.graph), load(r, "pairs", o.pairs));
  auto h = parse_graph(load(r, "subgraph", o.subgraph)).graph;
  add_verify_findings(r, verify_preserver(inst.graph, h, inst.pairs));
  set_counts(r, h, inst.pairs.size());
  r.metrics["host_edge_count"] = static_cast<std::int64_t>(inst.graph.edge_count());
}

void run_lift(const Options& o, Report& r) {
  auto inst = parse_instance(load(r, "graph", o.graph), load(r, "pairs", o.pairs));
  auto lift = bipartite_lift(inst.graph, inst.pairs);
  for (std::size_t i = 0; i < lift.lifted_pairs.size(); ++i) {
    const auto& lp = lift.lifted_pairs[i];
    const auto& op = lift.origin[i];
    auto lifted = shortest_distance(lift.lifted, lp.source, lp.target);
    auto original = shortest_distance(inst.graph, op.source, op.target);
    if (lifted != original) {
      r.violations.push_back({"lifted-distance", show(lp) + " " + show(lifted) + " vs " + show(op) + " " + show(original)});
    }
  }
  set_counts(r, lift.lifted, lift.lifted_pairs.size());
  if (!o.out.empty()) {
    write_file(o.out + ".graph", serialize_graph(lift.lifted));
    write_file(o.out + ".pairs", serialize_pairs(lift.lifted_pairs));
  }
}

void run_contract(const Options& o, Report& r) {
  auto inst = parse_instance(load(r, "graph", o.graph), load(r, "pairs", o.pairs));
  auto h_lift = parse_graph(load(r, "subgraph", o.subgraph)).graph;
  auto lift = bipartite_lift(inst.graph, inst.pairs);
  auto h = contract(h_lift, lift);
  add_verify_findings(r, verify_preserver(inst.graph, h, inst.pairs));
  if (h.edge_count() > h_lift.edge_count()) {
    r.violations.push_back({"contract-size", std::to_string(h.edge_count()) + " > " + std::to_string(h_lift.edge_count())});
  }
  set_counts(r, h, inst.pairs.size());
  r.metrics["lifted_edge_count"] = static_cast<std::int64_t>(h_lift.edge_count());
  if (!o.out.empty()) write_file(o.out, serialize_graph(h));
}

std::vector<const Path*> scheme_paths(const PathSystem& ps) {
  std::vector<const Path*> out;
  for (const auto& [pair, path] : ps.entries()) out.push_back(&path);
  return out;
}

// With pairs: triples of the oriented union of consistent-scheme paths.
// Without: triples of the (directed) graph itself.
void run_triples(const Options& o, Report& r) {
  auto g = parse_graph(load(r, "graph", o.graph)).graph;
  std::size_t pairs = 0;
  Graph h = g;
  if (!o.pairs.empty()) {
    PairSet ps(g, parse_pair_list(load(r, "pairs", o.pairs)));
    pairs = ps.size();
    auto scheme = consistent_scheme(g, ps);
    h = oriented_union(g, scheme_paths(scheme));
  }
  const auto triples = count_branching_triples(h);
  set_counts(r, h, pairs);
  r.metrics["branching_triples"] = static_cast<std::int64_t>(triples);
  if (pairs > 0 && triples > choose3(pairs)) {
    r.violations.push_back({"branching-triples", std::to_string(triples) + " > C(" + std::to_string(pairs) + ",3)"});
  }
}

void run_stats(const Options& o, Report& r) {
  auto inst = parse_instance(load(r, "graph", o.graph), load(r, "pairs", o.pairs));
  const Graph& g = inst.graph;
  set_counts(r, g, inst.pairs.size());
  auto scheme = consistent_scheme(g, inst.pairs);
  auto h = oriented_union(g, scheme_paths(scheme));
  r.metrics["branching_triples"] = static_cast<std::int64_t>(count_branching_triples(h));
  r.metrics["consistent_union_edges"] = static_cast<std::int64_t>(h.edge_count());
  if (!g.directed() && !g.weighted()) {
    auto built = build_uu_preserver(g, inst.pairs);
    r.metrics["matching_class_count"] = static_cast<std::int64_t>(built.partition.classes.size());
    for (const auto& [key, edges] : built.partition.classes) {
      r.metrics["matching_class." + std::to_string(key.first) + "." + std::to_string(key.second)] =
          static_cast<std::int64_t>(edges.size());
    }
    std::size_t branching = 0;
    for (const auto& [s, tree] : built.trees) branching += tree.branching.size();
    r.metrics["branching_edge_count"] = static_cast<std::int64_t>(branching);
  }
}

ObstacleMode parse_mode(const std::string& mode) {
  if (mode == "weighted") return ObstacleMode::Weighted;
  if (mode == "unweighted") return ObstacleMode::Unweighted;
  throw UsageError("--mode must be weighted or unweighted");
}

std::size_t middle_degree(const OuterInstance& outer) {
  for (NodeId v = 0; v < outer.graph.node_count(); ++v) {
    if (outer.layer[v] == 1) return outer.graph.out_degree(v);
  }
  throw PreconditionFailed("outer instance has no middle-layer node");
}

OuterInstance load_outer(Report& r, const std::string& graph_path, const std::string& pairs_path) {
  auto inst = parse_instance(load(r, "outer_graph", graph_path), load(r, "outer_pairs", pairs_path));
  if (inst.layer.empty()) throw InvariantViolation("outer graph needs layer lines");
  OuterInstance outer{std::move(inst.graph), std::move(inst.layer), std::move(inst.pairs), 0};
  outer.degree = middle_degree(outer);
  return outer;
}

void add_structure_findings(Report& r, const std::vector<StructureFinding>& findings) {
  for (const auto& f : findings) r.violations.push_back({"structure", show(f.pair) + " [" + show(f.path) + "] " + f.reason});
}

void record_forced(Report& r, const ObstacleInstance& inst, std::size_t cap) {
  try {
    r.metrics["forced_edge_count"] = static_cast<std::int64_t>(forced_edge_count(inst, cap));
  } catch (const PreconditionFailed& e) {
    r.violations.push_back({"forced-edges", e.what()});
  }
}

void run_lowerbound_build(const Options& o, Report& r) {
  const auto mode = parse_mode(o.mode);
  OuterInstance outer;
  if (!o.outer_graph.empty()) {
    outer = load_outer(r, o.outer_graph, o.outer_pairs);
  } else {
    outer = gen_outer(o.nmid, o.degree, mode == ObstacleMode::Weighted);
  }
  add_findings(r, "outer.", validate_outer(outer, o.cap));

  InnerFactory factory;
  if (!o.inner_graph.empty()) {
    auto parsed = parse_instance(load(r, "inner_graph", o.inner_graph), load(r, "inner_pairs", o.inner_pairs));
    auto inner = o.regularize ? layered_regularize(parsed.graph, parsed.pairs)
                              : make_inner(std::move(parsed.graph), std::move(parsed.pairs), std::move(parsed.layer));
    factory = [inner](NodeId, std::size_t) { return inner; };
  } else {
    const bool layered = mode == ObstacleMode::Unweighted;
    const auto len = o.inner_len;
    factory = [layered, len](NodeId, std::size_t degree) { return gen_inner(degree / 2, len, layered); };
  }
  if (!r.violations.empty()) throw PreconditionFailed("outer instance is invalid: " + r.violations.front().detail);

  ObstacleOptions options;
  options.scale_override = o.scale;
  auto inst = obstacle_product(outer, factory, mode, options);
  auto findings = check_path_structure(inst, o.cap);
  add_structure_findings(r, findings);
  if (findings.empty()) record_forced(r, inst, o.cap);

  set_counts(r, inst.graph, inst.demanded.size());
  r.metrics["subset_size"] = static_cast<std::int64_t>(inst.subset.size());
  r.metrics["scale"] = inst.scale;
  r.metrics["inner_copies"] = static_cast<std::int64_t>(inst.replacements.size());
  if (!o.out.empty()) {
    write_file(o.out + ".graph", serialize_graph(inst.graph, inst.layer));
    write_file(o.out + ".pairs", serialize_pairs(inst.demanded));
    write_file(o.out + ".map.json", serialize_obstacle_map(inst));
  }
}

void run_lowerbound_check(const Options& o, Report& r) {
  const std::string kind = o.kind.empty() ? "obstacle" : o.kind;
  if (kind == "outer") {
    auto outer = load_outer(r, o.graph, o.pairs);
    add_findings(r, "outer.", validate_outer(outer, o.cap));
    set_counts(r, outer.graph, outer.pairs.size());
    r.metrics["degree"] = static_cast<std::int64_t>(outer.degree);
  } else if (kind == "inner") {
    auto parsed = parse_instance(load(r, "graph", o.graph), load(r, "pairs", o.pairs));
    set_counts(r, parsed.graph, parsed.pairs.size());
    try {
      add_findings(r, "inner.", validate_inner(make_inner(parsed.graph, parsed.pairs, parsed.layer)));
    } catch (const NotDisjointSystem& e) {
      r.violations.push_back({"inner.system", e.what()});
    } catch (const LayerMismatch& e) {
      r.violations.push_back({"inner.layering", e.what()});
    }
  } else if (kind == "obstacle") {
    auto inst = parse_obstacle(load(r, "graph", o.graph), load(r, "pairs", o.pairs), load(r, "map", o.map));
    auto findings = check_path_structure(inst, o.cap);
    add_structure_findings(r, findings);
    if (findings.empty()) record_forced(r, inst, o.cap);
    set_counts(r, inst.graph, inst.demanded.size());
    r.metrics["subset_size"] = static_cast<std::int64_t>(inst.subset.size());
  } else {
    throw UsageError("--kind must be obstacle, outer or inner");
  }
}

void run_gen(const Options& o, Report& r) {
  Graph g;
  PairSet pairs;
  std::vector<int> layer;
  if (o.kind == "random") {
    g = random_connected_graph(static_cast<NodeId>(o.nodes), o.edges, o.directed, o.weighted, o.max_weight, o.seed);
    pairs = random_pairs(g, o.pair_count, o.seed + 1);
  } else if (o.kind == "outer") {
    auto outer = gen_outer(o.nmid, o.degree, o.weighted);
    g = std::move(outer.graph);
    pairs = std::move(outer.pairs);
    layer = std::move(outer.layer);
  } else if (o.kind == "inner") {
    auto inner = gen_inner(o.pair_count, o.inner_len, o.layered);
    g = std::move(inner.graph);
    pairs = std::move(inner.pairs);
    layer = std::move(inner.layer);
  } else if (o.kind == "system") {
    auto [sg, sp] = random_disjoint_system(o.paths, o.min_len, o.max_len, o.merges, o.seed);
    g = std::move(sg);
    pairs = std::move(sp);
  } else {
    throw UsageError("--kind must be random, outer, inner or system");
  }
  set_counts(r, g, pairs.size());
  r.metrics["seed"] = static_cast<std::int64_t>(o.seed);
  if (!o.out.empty()) {
    write_file(o.out + ".graph", serialize_graph(g, layer));
    write_file(o.out + ".pairs", serialize_pairs(pairs));
  }
}

struct Command {
  const char* name;
  const char* help;
  void (*run)(const Options&, Report&);
};

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Distance preserver toolkit", "dpres"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every subcommand");

  const Command commands[] = {
      {"preserve", "Build a distance preserver (--mode dw|uu)", run_preserve},
      {"verify", "Check that a subgraph preserves the demanded distances", run_verify},
      {"lift", "Write the bipartite lift of an undirected unweighted instance", run_lift},
      {"contract", "Contract a lifted subgraph and verify it on the original instance", run_contract},
      {"triples", "Count branching triples", run_triples},
      {"lowerbound-build", "Build an obstacle-product instance and check its path structure", run_lowerbound_build},
      {"lowerbound-check", "Check an obstacle, outer or inner instance", run_lowerbound_check},
      {"gen", "Generate a random or structured instance", run_gen},
      {"stats", "Counts, branching triples and matching-class sizes", run_stats},
  };

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--cap", o.cap, "Shortest-path enumeration cap")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Random seed");
  };
  auto instance = [&](CLI::App* sub) {
    sub->add_option("-g,--graph", o.graph, "Graph file");
    sub->add_option("-p,--pairs", o.pairs, "Pairs file");
  };

  std::map<std::string, CLI::App*> subs;
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    common(sub);
    subs[c.name] = sub;
  }

  auto* s = subs["preserve"];
  instance(s);
  s->add_option("--mode", o.mode, "dw or uu")->required()->check(CLI::IsMember({"dw", "uu"}));
  s->add_option("-o,--out", o.out, "Write the preserver here");

  s = subs["verify"];
  instance(s);
  s->add_option("-H,--subgraph", o.subgraph, "Candidate preserver")->required();

  s = subs["lift"];
  instance(s);
  s->add_option("-o,--out", o.out, "Output prefix for .graph and .pairs");

  s = subs["contract"];
  instance(s);
  s->add_option("-H,--subgraph", o.subgraph, "Subgraph of the lift")->required();
  s->add_option("-o,--out", o.out, "Write the contracted subgraph here");

  s = subs["triples"];
  instance(s);

  s = subs["stats"];
  instance(s);

  s = subs["lowerbound-build"];
  s->add_option("--mode", o.mode, "weighted or unweighted")->required()->check(CLI::IsMember({"weighted", "unweighted"}));
  s->add_option("--nmid", o.nmid, "Middle nodes of the generated outer instance");
  s->add_option("--D", o.degree, "Middle-node degree of the generated outer instance");
  s->add_option("--inner-len", o.inner_len, "Path length of the generated inner instances");
  s->add_option("--outer-graph", o.outer_graph, "Outer graph file with layer lines");
  s->add_option("--outer-pairs", o.outer_pairs, "Outer pairs file");
  s->add_option("--inner-graph", o.inner_graph, "Inner graph file");
  s->add_option("--inner-pairs", o.inner_pairs, "Inner pairs file");
  s->add_flag("--regularize", o.regularize, "Regularize and layer the inner instance first");
  s->add_option("--scale", o.scale, "Override the weighted outer-edge multiplier");
  s->add_option("-o,--out", o.out, "Output prefix for .graph, .pairs and .map.json");

  s = subs["lowerbound-check"];
  instance(s);
  s->add_option("--kind", o.kind, "obstacle (default), outer or inner");
  s->add_option("--map", o.map, "Obstacle map file written by lowerbound-build");

  s = subs["gen"];
  s->add_option("--kind", o.kind, "random, outer, inner or system")->required();
  s->add_option("-n,--nodes", o.nodes, "Node count (random)");
  s->add_option("-m,--edges", o.edges, "Edge count (random)");
  s->add_option("--pair-count", o.pair_count, "Pairs (random, inner)");
  s->add_option("--max-weight", o.max_weight, "Largest weight (random)");
  s->add_flag("--directed", o.directed, "Directed graph (random)");
  s->add_flag("--weighted", o.weighted, "Weighted graph (random, outer)");
  s->add_flag("--layered", o.layered, "Layered inner instance");
  s->add_option("--nmid", o.nmid, "Middle nodes (outer)");
  s->add_option("--D", o.degree, "Middle-node degree (outer)");
  s->add_option("--inner-len", o.inner_len, "Path length (inner)");
  s->add_option("--paths", o.paths, "Paths (system)");
  s->add_option("--min-len", o.min_len, "Shortest path length (system)");
  s->add_option("--max-len", o.max_len, "Longest path length (system)");
  s->add_option("--merges", o.merges, "Merge attempts (system)");
  s->add_option("-o,--out", o.out, "Output prefix for .graph and .pairs");

  const CLI::App* active = &app;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    const auto parsed = app.get_subcommands();
    out << (parsed.empty() ? app.help() : parsed.front()->help());
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    const auto parsed = app.get_subcommands();
    err << "usage error: " << e.what() << "\n" << (parsed.empty() ? app.help() : parsed.front()->help());
    return 2;
  }

  for (const auto& c : commands) {
    if (!subs[c.name]->parsed()) continue;
    active = subs[c.name];
    Report report;
    report.command = c.name;
    try {
      c.run(o, report);
      out << emit_report(report, parse_report_format(o.format));
      return report.exit_status();
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << "\n" << active->help();
    } catch (const ParseError& e) {
      err << "parse error: " << e.what() << "\n";
    } catch (const Error& e) {
      err << "error: " << e.what() << "\n";
    }
    return 2;
  }
  err << app.help();
  return 2;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  for (const auto& a : args) argv.push_back(a.c_str());
  argv.push_back(nullptr);
  return dispatch(static_cast<int>(args.size()), argv.data(), out, err);
}

}  // namespace dpres::cli
