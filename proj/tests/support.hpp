#pragma once

#include <random>
#include <string>
#include <vector>

#include "smlc/graph.hpp"

namespace smlc::testing {

inline std::string data_path(const std::string& name) { return std::string(SMLC_DATA_DIR) + "/" + name; }

inline Graph graph_of(std::size_t n, std::vector<Edge> edges) { return Graph::from_edges(n, edges); }

inline Graph clique(std::size_t n) {
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

// G(n, p) with a random spanning tree added so the result is connected.
inline Graph random_connected(std::size_t n, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> e;
  for (NodeId v = 1; v < n; ++v) {
    std::uniform_int_distribution<NodeId> parent(0, v - 1);
    e.emplace_back(parent(rng), v);
  }
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (unit(rng) < p) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

// G(n, p), possibly disconnected.
inline Graph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> e;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (unit(rng) < p) e.emplace_back(u, v);
  return Graph::from_edges(n, e);
}

}  // namespace smlc::testing
