#include "smlc/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace smlc {

NodeSet::NodeSet(std::vector<NodeId> ids) : members_(std::move(ids)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

NodeSet NodeSet::range(std::size_t n) {
  std::vector<NodeId> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(i);
  return NodeSet(std::move(ids));
}

bool NodeSet::contains(NodeId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::size_t NodeSet::intersection_size(const NodeSet& other) const {
  std::size_t count = 0;
  auto a = members_.begin();
  auto b = other.members_.begin();
  while (a != members_.end() && b != other.members_.end()) {
    if (*a < *b) {
      ++a;
    } else if (*b < *a) {
      ++b;
    } else {
      ++count;
      ++a;
      ++b;
    }
  }
  return count;
}

Graph Graph::from_edges(std::size_t n, std::span<const Edge> edges,
                        std::vector<std::string> labels) {
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  } else if (labels.size() != n) {
    throw std::invalid_argument("label count does not match node count");
  }

  std::vector<std::vector<NodeId>> lists(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::domain_error("edge endpoint out of range");
    if (u == v) continue;
    lists[u].push_back(v);
    lists[v].push_back(u);
  }

  Graph g;
  g.offsets_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& l = lists[i];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    g.offsets_[i + 1] = g.offsets_[i] + l.size();
  }
  g.adjacency_.reserve(g.offsets_[n]);
  for (auto& l : lists) g.adjacency_.insert(g.adjacency_.end(), l.begin(), l.end());

  g.labels_ = std::move(labels);
  g.index_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!g.index_.emplace(g.labels_[i], static_cast<NodeId>(i)).second)
      throw std::invalid_argument("duplicate node label '" + g.labels_[i] + "'");
  }
  return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::optional<NodeId> Graph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeId Graph::index_of(std::string_view label) const {
  if (auto v = find(label)) return *v;
  throw std::domain_error("unknown node label '" + std::string(label) + "'");
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (NodeId u = 0; u < node_count(); ++u)
    for (NodeId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::size_t Graph::volume(const NodeSet& nodes) const {
  std::size_t vol = 0;
  for (NodeId v : nodes) vol += degree(v);
  return vol;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) tokens.push_back(std::move(tok));
  return tokens;
}

bool is_blank_or_comment(const std::string& line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string::npos || line[pos] == '#';
}

}  // namespace

Graph load_edge_list(std::istream& in) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, NodeId> index;
  std::vector<Edge> edges;

  auto intern = [&](std::string label) {
    auto [it, inserted] = index.emplace(label, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(std::move(label));
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    auto tokens = split_ws(line);
    if (tokens.size() != 2)
      throw ParseError(line_no, "expected two node labels, found " + std::to_string(tokens.size()));
    NodeId u = intern(std::move(tokens[0]));
    NodeId v = intern(std::move(tokens[1]));
    edges.emplace_back(u, v);
  }
  std::size_t n = labels.size();
  return Graph::from_edges(n, edges, std::move(labels));
}

Graph load_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path + "'");
  return load_edge_list(in);
}

void write_edge_list(const Graph& g, std::ostream& out) {
  for (auto [u, v] : g.edges()) out << g.label(u) << '\t' << g.label(v) << '\n';
}

std::vector<NodeSet> load_communities(std::istream& in, const Graph& g) {
  std::vector<NodeSet> out;
  std::vector<std::string> unknown;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank_or_comment(line)) continue;
    std::vector<NodeId> ids;
    for (const auto& tok : split_ws(line)) {
      if (auto v = g.find(tok)) {
        ids.push_back(*v);
      } else if (unknown.size() < 5) {
        unknown.push_back(tok);
      }
    }
    out.emplace_back(std::move(ids));
  }
  if (!unknown.empty()) {
    std::string msg = "community file references unknown labels:";
    for (const auto& l : unknown) msg += " " + l;
    throw std::domain_error(msg);
  }
  return out;
}

std::vector<NodeSet> load_communities_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open community file '" + path + "'");
  return load_communities(in, g);
}

Subgraph induced_subgraph(const Graph& g, const NodeSet& nodes) {
  std::unordered_map<NodeId, NodeId> remap;
  remap.reserve(nodes.size());
  std::vector<std::string> labels;
  labels.reserve(nodes.size());
  for (NodeId v : nodes) {
    if (v >= g.node_count()) throw std::domain_error("induced_subgraph: node index out of range");
    remap.emplace(v, static_cast<NodeId>(remap.size()));
    labels.push_back(g.label(v));
  }

  std::vector<Edge> edges;
  for (NodeId v : nodes) {
    NodeId lv = remap[v];
    for (NodeId w : g.neighbors(v)) {
      if (w <= v) continue;
      if (auto it = remap.find(w); it != remap.end()) edges.emplace_back(lv, it->second);
    }
  }
  return {Graph::from_edges(nodes.size(), edges, std::move(labels)), nodes.members()};
}

std::vector<NodeSet> biconnected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  constexpr std::size_t kUnvisited = 0;
  std::vector<std::size_t> disc(n, kUnvisited), low(n, 0);
  std::vector<NodeId> parent(n, 0);
  std::vector<std::size_t> cursor(n, 0);
  std::vector<Edge> edge_stack;
  std::vector<NodeSet> out;
  std::size_t timer = 0;

  auto pop_component = [&](NodeId u, NodeId v) {
    std::vector<NodeId> members;
    while (!edge_stack.empty()) {
      Edge e = edge_stack.back();
      edge_stack.pop_back();
      members.push_back(e.first);
      members.push_back(e.second);
      if (e.first == u && e.second == v) break;
    }
    out.emplace_back(std::move(members));
  };

  std::vector<NodeId> stack;
  for (NodeId root = 0; root < n; ++root) {
    if (disc[root] != kUnvisited || g.degree(root) == 0) continue;
    disc[root] = low[root] = ++timer;
    parent[root] = root;
    stack.push_back(root);
    while (!stack.empty()) {
      NodeId u = stack.back();
      auto nb = g.neighbors(u);
      if (cursor[u] < nb.size()) {
        NodeId v = nb[cursor[u]++];
        if (disc[v] == kUnvisited) {
          parent[v] = u;
          disc[v] = low[v] = ++timer;
          edge_stack.emplace_back(u, v);
          stack.push_back(v);
        } else if (v != parent[u] && disc[v] < disc[u]) {
          edge_stack.emplace_back(u, v);
          low[u] = std::min(low[u], disc[v]);
        }
        continue;
      }
      stack.pop_back();
      if (u == root) continue;
      NodeId p = parent[u];
      low[p] = std::min(low[p], low[u]);
      if (low[u] >= disc[p]) pop_component(p, u);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<NodeSet> connected_components(const Graph& g) {
  const std::size_t n = g.node_count();
  std::vector<bool> seen(n, false);
  std::vector<NodeSet> out;
  std::vector<NodeId> frontier;
  for (NodeId s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<NodeId> members{s};
    seen[s] = true;
    frontier.assign(1, s);
    while (!frontier.empty()) {
      NodeId u = frontier.back();
      frontier.pop_back();
      for (NodeId v : g.neighbors(u)) {
        if (seen[v]) continue;
        seen[v] = true;
        members.push_back(v);
        frontier.push_back(v);
      }
    }
    out.emplace_back(std::move(members));
  }
  return out;
}

}  // namespace smlc
