#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "smlc/factorization.hpp"
#include "smlc/graph.hpp"

namespace smlc {

struct EstimationParams {
  int k_max_divisor = 4;          // k_max = n_s / k_max_divisor
  double beta = 1e-4;
  double init_sparseness = 0.8;   // a k must beat this to be retained
  int patience = 10;              // consecutive non-improving k before stopping
  int restarts = 5;               // best-of runs per k
  std::uint64_t rng_seed = 0;

  void validate() const;
};

struct SweepPoint {
  int k = 0;
  double mean_over_nodes = 0.0;  // summed column sparseness / n_s, the ranking value
  double mean_over_k = 0.0;      // summed column sparseness / k, diagnostic only
  double running_max = 0.0;
};

struct EstimationResult {
  int k_prime = 1;
  Matrix H_normalized;  // k' x n_s, unit column sums
  double best_sparseness = 0.0;
  std::vector<SweepPoint> sweep_trace;
  bool degenerate = false;  // sample too small to sweep
  std::vector<int> ballots;  // k' of each vote, when voting
};

// Dense adjacency matrix of g.
Matrix adjacency_matrix(const Graph& g);

// Average column sparseness of H divided by n (columns). Zero columns count 0.
double mean_column_sparseness(const Matrix& H);

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b = 0);

EstimationResult estimate_k(const Graph& g_s, const EstimationParams& params = {});

// Majority vote of `votes` sweeps with rng seeds rng_seed, rng_seed + 1, ...
// Ties go to the candidate with the higher best sparseness. Returns the
// result of the first sweep that produced the winning k'.
EstimationResult estimate_k_voted(const Graph& g_s, const EstimationParams& params = {},
                                  int votes = 3);

// B_ij = A_ij - d_i d_j / 2m.
Matrix modularity_matrix(const Graph& g);

// Partition must be disjoint and cover every node.
double modularity_value(const Graph& g, std::span<const NodeSet> partition);

struct ModularityPartition {
  int k = 1;
  std::vector<NodeSet> partition;  // sorted
  double q = 0.0;
};

// Recursive spectral bisection on the generalized modularity matrix.
ModularityPartition modularity_estimate_k(const Graph& g);

}  // namespace smlc
