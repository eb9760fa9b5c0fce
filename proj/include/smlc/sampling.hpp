#pragma once

#include <variant>

#include "smlc/diffusion.hpp"
#include "smlc/graph.hpp"

namespace smlc {

using DiffusionParams = std::variant<PprParams, HkParams>;

struct Sample {
  Subgraph sub;             // G_s with its local -> parent index map
  NodeId seed_local = 0;
  NodeSet support;          // parent indices with positive diffusion mass
  // Set when no biconnected component of at least three nodes contains the
  // seed and the sample was widened to the seed's connected component.
  bool widened = false;

  const Graph& graph() const noexcept { return sub.graph; }
  NodeSet parent_nodes() const { return NodeSet(sub.to_parent); }
};

// Nodes with positive diffusion mass around the seed.
NodeSet diffusion_support(const Graph& g, NodeId seed, const DiffusionParams& params);

// Largest biconnected component containing the seed inside the subgraph
// induced by the diffusion support. Ties go to the lexicographically smallest
// member sequence.
Sample local_sample(const Graph& g, NodeId seed, const DiffusionParams& params);

}  // namespace smlc
