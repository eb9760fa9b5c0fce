#include "smlc/planted.hpp"

#include <random>
#include <stdexcept>

namespace smlc {

PlantedGraph generate_planted(int k, int size, double p_in, double p_out, int overlap,
                              std::uint64_t rng_seed) {
  if (k < 1) throw std::domain_error("k must be at least 1");
  if (size < 1) throw std::domain_error("block size must be at least 1");
  if (overlap < 0 || overlap >= size) throw std::domain_error("overlap must lie in [0, size)");
  if (!(p_out >= 0.0 && p_out < p_in && p_in <= 1.0))
    throw std::domain_error("probabilities must satisfy 0 <= p_out < p_in <= 1");

  const int stride = size - overlap;
  const auto n = static_cast<std::size_t>(k * stride + overlap);
  std::vector<std::vector<int>> blocks_of(n);
  PlantedGraph out;
  for (int b = 0; b < k; ++b) {
    std::vector<NodeId> members;
    for (int i = 0; i < size; ++i) {
      const auto v = static_cast<NodeId>(b * stride + i);
      members.push_back(v);
      blocks_of[v].push_back(b);
    }
    out.communities.emplace_back(std::move(members));
  }

  auto share_block = [&](NodeId u, NodeId v) {
    for (int a : blocks_of[u])
      for (int b : blocks_of[v])
        if (a == b) return true;
    return false;
  };

  std::mt19937_64 rng(rng_seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      const double p = share_block(u, v) ? p_in : p_out;
      if (unit(rng) < p) edges.emplace_back(u, v);
    }
  }
  out.graph = Graph::from_edges(n, edges);
  out.disconnected_blocks = p_out == 0.0 && overlap == 0 && k > 1;
  return out;
}

}  // namespace smlc
