#include "dpres/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace dpres {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <class Int>
Int to_int(std::string_view token, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

bool to_flag(std::string_view token, std::size_t line, const char* what) {
  if (token == "0") return false;
  if (token == "1") return true;
  throw ParseError(line, std::string(what) + " must be 0 or 1");
}

// Calls fn(line_number, tokens) for every non-blank, non-comment line.
template <class Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    auto end = text.find('\n');
    auto line = text.substr(0, end);
    text = end == std::string_view::npos ? std::string_view{} : text.substr(end + 1);
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    fn(number, tokens);
  }
}

}  // namespace

ParsedGraph parse_graph(std::string_view text) {
  bool have_header = false;
  NodeId n = 0;
  bool directed = false;
  bool weighted = false;
  std::vector<Edge> edges;
  std::set<std::pair<NodeId, NodeId>> seen;
  std::map<NodeId, int> layers;

  for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (!have_header) {
      std::map<std::string_view, std::string_view> kv;
      for (auto t : tok) {
        auto eq = t.find('=');
        if (eq == std::string_view::npos) throw ParseError(line, "expected header n=<int> directed=<0|1> weighted=<0|1>");
        kv[t.substr(0, eq)] = t.substr(eq + 1);
      }
      if (kv.size() != 3 || !kv.count("n") || !kv.count("directed") || !kv.count("weighted")) {
        throw ParseError(line, "header needs exactly n, directed and weighted");
      }
      n = to_int<NodeId>(kv["n"], line, "node count");
      if (n < 0) throw ParseError(line, "negative node count");
      directed = to_flag(kv["directed"], line, "directed");
      weighted = to_flag(kv["weighted"], line, "weighted");
      have_header = true;
      return;
    }
    if (tok.front() == "layer") {
      if (tok.size() != 3) throw ParseError(line, "expected 'layer <node> <int>'");
      auto node = to_int<NodeId>(tok[1], line, "node");
      auto value = to_int<int>(tok[2], line, "layer");
      if (node < 0 || node >= n) throw InvariantViolation("layer line for unknown node " + std::to_string(node));
      if (value < 0) throw InvariantViolation("negative layer for node " + std::to_string(node));
      if (!layers.emplace(node, value).second) throw ParseError(line, "duplicate layer for node " + std::to_string(node));
      return;
    }
    if (tok.size() != 2 && tok.size() != 3) throw ParseError(line, "expected 'u v [w]'");
    Edge e{to_int<NodeId>(tok[0], line, "node"), to_int<NodeId>(tok[1], line, "node"), 1};
    if (tok.size() == 3) {
      e.w = to_int<Weight>(tok[2], line, "weight");
      if (!weighted && e.w != 1) throw ParseError(line, "weight given in an unweighted graph");
    } else if (weighted) {
      throw ParseError(line, "missing weight");
    }
    auto key = directed ? std::pair(e.u, e.v) : std::pair(std::min(e.u, e.v), std::max(e.u, e.v));
    if (!seen.insert(key).second) throw ParseError(line, "duplicate edge");
    edges.push_back(e);
  });
  if (!have_header) throw ParseError(1, "missing header");

  ParsedGraph out;
  out.graph = Graph(n, directed, weighted, std::move(edges));
  if (!layers.empty()) {
    if (layers.size() != static_cast<std::size_t>(n)) throw InvariantViolation("layer lines do not cover every node");
    for (const auto& [node, value] : layers) out.layer.push_back(value);
  }
  return out;
}

std::vector<NodePair> parse_pair_list(std::string_view text) {
  std::vector<NodePair> out;
  for_each_line(text, [&](std::size_t line, const std::vector<std::string_view>& tok) {
    if (tok.size() != 2) throw ParseError(line, "expected 's t'");
    out.push_back({to_int<NodeId>(tok[0], line, "node"), to_int<NodeId>(tok[1], line, "node")});
  });
  return out;
}

ParsedInstance parse_instance(std::string_view graph_text, std::string_view pairs_text) {
  auto parsed = parse_graph(graph_text);
  ParsedInstance out;
  try {
    out.pairs = PairSet(parsed.graph, parse_pair_list(pairs_text));
  } catch (const InvalidNode& e) {
    throw InvariantViolation(e.what());
  }
  out.graph = std::move(parsed.graph);
  out.layer = std::move(parsed.layer);
  return out;
}

std::string serialize_graph(const Graph& g, const std::vector<int>& layer,
                            const std::vector<std::string>& comments) {
  std::ostringstream os;
  os << "n=" << g.node_count() << " directed=" << (g.directed() ? 1 : 0)
     << " weighted=" << (g.weighted() ? 1 : 0) << '\n';
  for (const auto& c : comments) os << "# " << c << '\n';
  for (const auto& e : g.edges()) {
    os << e.u << ' ' << e.v;
    if (g.weighted()) os << ' ' << e.w;
    os << '\n';
  }
  for (std::size_t v = 0; v < layer.size(); ++v) os << "layer " << v << ' ' << layer[v] << '\n';
  return os.str();
}

std::string serialize_pairs(const PairSet& pairs) {
  std::ostringstream os;
  for (const auto& p : pairs) os << p.source << ' ' << p.target << '\n';
  return os.str();
}

std::string serialize_obstacle_map(const ObstacleInstance& inst) {
  nlohmann::json j;
  j["mode"] = inst.mode == ObstacleMode::Weighted ? "weighted" : "unweighted";
  j["scale"] = inst.scale;
  j["subset"] = inst.subset;
  j["replacements"] = nlohmann::json::array();
  for (const auto& rep : inst.replacements) {
    nlohmann::json r;
    r["middle"] = rep.middle;
    r["first_node"] = rep.first_node;
    r["node_count"] = rep.node_count;
    r["pairs"] = nlohmann::json::array();
    for (const auto& c : rep.pairs) {
      r["pairs"].push_back({{"demanded", {c.demanded.source, c.demanded.target}},
                            {"first_end", c.first_end},
                            {"last_end", c.last_end},
                            {"inner", {c.inner.source, c.inner.target}},
                            {"inner_distance", c.inner_distance}});
    }
    j["replacements"].push_back(std::move(r));
  }
  return j.dump(2) + "\n";
}

ObstacleInstance parse_obstacle(std::string_view graph_text, std::string_view pairs_text,
                                std::string_view map_text) {
  auto parsed = parse_instance(graph_text, pairs_text);
  ObstacleInstance inst;
  inst.graph = std::move(parsed.graph);
  inst.demanded = std::move(parsed.pairs);
  inst.layer = std::move(parsed.layer);
  const NodeId n = inst.graph.node_count();
  auto node = [&](NodeId v) {
    if (v < 0 || v >= n) throw InvariantViolation("map refers to unknown node " + std::to_string(v));
    return v;
  };
  auto as_pair = [&](const nlohmann::json& a) {
    if (!a.is_array() || a.size() != 2) throw InvariantViolation("map pair must be a two-element array");
    return NodePair{node(a[0].get<NodeId>()), node(a[1].get<NodeId>())};
  };

  nlohmann::json j;
  try {
    j = nlohmann::json::parse(map_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, std::string("bad map JSON: ") + e.what());
  }
  try {
    const auto mode = j.at("mode").get<std::string>();
    if (mode != "weighted" && mode != "unweighted") throw InvariantViolation("unknown mode " + mode);
    inst.mode = mode == "weighted" ? ObstacleMode::Weighted : ObstacleMode::Unweighted;
    inst.scale = j.at("scale").get<Weight>();
    for (const auto& v : j.at("subset")) inst.subset.push_back(node(v.get<NodeId>()));
    std::set<NodePair> mapped;
    for (const auto& r : j.at("replacements")) {
      Replacement rep;
      rep.middle = r.at("middle").get<NodeId>();
      rep.first_node = node(r.at("first_node").get<NodeId>());
      rep.node_count = r.at("node_count").get<NodeId>();
      if (rep.node_count < 0 || rep.first_node + rep.node_count > n) throw InvariantViolation("inner copy range out of bounds");
      for (const auto& c : r.at("pairs")) {
        Correspondence corr;
        corr.demanded = as_pair(c.at("demanded"));
        corr.first_end = node(c.at("first_end").get<NodeId>());
        corr.last_end = node(c.at("last_end").get<NodeId>());
        corr.inner = as_pair(c.at("inner"));
        corr.inner_distance = c.at("inner_distance").get<Weight>();
        mapped.insert(corr.demanded);
        rep.pairs.push_back(corr);
      }
      inst.replacements.push_back(std::move(rep));
    }
    std::set<NodePair> demanded(inst.demanded.begin(), inst.demanded.end());
    if (mapped != demanded) throw InvariantViolation("map does not cover exactly the demanded pairs");
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, std::string("bad map field: ") + e.what());
  }
  return inst;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << content;
}

}  // namespace dpres
