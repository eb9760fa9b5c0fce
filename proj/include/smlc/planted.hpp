#pragma once

#include <cstdint>
#include <vector>

#include "smlc/graph.hpp"

namespace smlc {

struct PlantedGraph {
  Graph graph;
  std::vector<NodeSet> communities;  // the blocks
  // p_out = 0 and overlap = 0: the blocks are mutually unreachable.
  bool disconnected_blocks = false;
};

// k blocks of `size` nodes laid out consecutively, each sharing its last
// `overlap` nodes with the next block. Pairs inside a common block are joined
// with probability p_in, all other pairs with p_out.
PlantedGraph generate_planted(int k, int size, double p_in, double p_out, int overlap,
                              std::uint64_t rng_seed);

}  // namespace smlc
