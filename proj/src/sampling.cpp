#include "smlc/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace smlc {

NodeSet diffusion_support(const Graph& g, NodeId seed, const DiffusionParams& params) {
  if (const auto* ppr = std::get_if<PprParams>(&params))
    return approximate_ppr(g, seed, *ppr).approximation.support();
  return hk_relax(g, seed, std::get<HkParams>(params)).support();
}

Sample local_sample(const Graph& g, NodeId seed, const DiffusionParams& params) {
  NodeSet support = diffusion_support(g, seed, params);
  Subgraph around = induced_subgraph(g, support);
  const auto& to_parent = around.to_parent;
  const NodeId seed_in_support = static_cast<NodeId>(
      std::lower_bound(to_parent.begin(), to_parent.end(), seed) - to_parent.begin());

  // Components are in local indices; local order follows parent order, so
  // comparing local sequences is the same as comparing parent sequences.
  const NodeSet* best = nullptr;
  auto components = biconnected_components(around.graph);
  for (const auto& c : components) {
    if (!c.contains(seed_in_support)) continue;
    if (!best || c.size() > best->size() || (c.size() == best->size() && c < *best)) best = &c;
  }

  bool widened = false;
  NodeSet chosen;
  if (best && best->size() >= 3) {
    chosen = *best;
  } else {
    widened = true;
    for (auto& c : connected_components(around.graph)) {
      if (c.contains(seed_in_support)) {
        chosen = std::move(c);
        break;
      }
    }
    if (chosen.size() < 2)
      throw std::domain_error("diffusion from seed '" + g.label(seed) +
                              "' reached no other node; lower epsilon");
  }

  Subgraph local = induced_subgraph(around.graph, chosen);
  for (auto& v : local.to_parent) v = to_parent[v];
  const NodeId seed_local = static_cast<NodeId>(
      std::lower_bound(local.to_parent.begin(), local.to_parent.end(), seed) -
      local.to_parent.begin());
  return {std::move(local), seed_local, std::move(support), widened};
}

}  // namespace smlc
