#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace smlc {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Raised by the edge-list and community-file readers.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Sorted, duplicate-free set of node indices.
class NodeSet {
 public:
  NodeSet() = default;
  NodeSet(std::initializer_list<NodeId> ids) : NodeSet(std::vector<NodeId>(ids)) {}
  explicit NodeSet(std::vector<NodeId> ids);

  static NodeSet range(std::size_t n);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(NodeId v) const;
  std::size_t intersection_size(const NodeSet& other) const;

  const std::vector<NodeId>& members() const noexcept { return members_; }
  auto begin() const noexcept { return members_.begin(); }
  auto end() const noexcept { return members_.end(); }
  NodeId operator[](std::size_t i) const { return members_[i]; }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend auto operator<=>(const NodeSet& a, const NodeSet& b) { return a.members_ <=> b.members_; }

 private:
  std::vector<NodeId> members_;
};

// Immutable undirected simple graph stored as compressed adjacency lists.
// Nodes are dense indices 0..n-1; every node carries an external label.
class Graph {
 public:
  Graph() = default;

  // Builds a graph on n nodes. Self-loops and repeated edges are dropped.
  // When labels is empty, node i is labelled with the decimal string of i.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges,
                          std::vector<std::string> labels = {});

  std::size_t node_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return adjacency_.size() / 2; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {adjacency_.data() + offsets_[v], adjacency_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  const std::string& label(NodeId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<NodeId> find(std::string_view label) const;
  // Throws std::domain_error naming the label when it is unknown.
  NodeId index_of(std::string_view label) const;

  // Each undirected edge once, as (u, v) with u < v, in ascending order.
  std::vector<Edge> edges() const;
  std::size_t volume(const NodeSet& nodes) const;
  std::size_t total_volume() const noexcept { return adjacency_.size(); }

 private:
  std::vector<std::size_t> offsets_{0};
  std::vector<NodeId> adjacency_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, NodeId> index_;
};

struct Subgraph {
  Graph graph;
  std::vector<NodeId> to_parent;  // local index -> parent index
};

// Reads a SNAP-style edge list: '#' comment lines, one "label label" pair
// per data line. Labels get dense indices in first-seen order.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);
void write_edge_list(const Graph& g, std::ostream& out);

// One community per line, whitespace-separated labels resolved against g.
std::vector<NodeSet> load_communities(std::istream& in, const Graph& g);
std::vector<NodeSet> load_communities_file(const std::string& path, const Graph& g);

Subgraph induced_subgraph(const Graph& g, const NodeSet& nodes);

// Node sets of the biconnected components (Hopcroft-Tarjan). Every edge lies in
// exactly one component; isolated nodes yield none. Components are returned
// sorted by their member sequences.
std::vector<NodeSet> biconnected_components(const Graph& g);

std::vector<NodeSet> connected_components(const Graph& g);

}  // namespace smlc
