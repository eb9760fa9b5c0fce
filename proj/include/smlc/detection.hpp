#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "smlc/estimation.hpp"
#include "smlc/sampling.hpp"

namespace smlc {

struct DetectionParams {
  std::optional<double> theta_override;  // in (0, 1]; default 1/k'
  DiffusionParams diffusion = PprParams{};
  EstimationParams estimation;
  int votes = 1;  // majority vote over this many estimation sweeps

  void validate() const;
};

struct CommunityResult {
  std::vector<NodeSet> communities;  // parent indices, each containing the seed
  int k_prime = 1;
  double theta = 1.0;
  Sample sample;
  Matrix membership;  // k' x n_s, unit column sums
  EstimationResult estimation;
};

// Row i of H as a community: {j : H(i, j) >= theta}, for every row.
std::vector<NodeSet> threshold_memberships(const Matrix& H, double theta);

// Thresholded communities that contain the seed.
std::vector<NodeSet> assign_communities(const Matrix& H, NodeId seed_local, double theta);

// Sorts by descending size, then lexicographically.
void sort_communities(std::vector<NodeSet>& communities);

CommunityResult s_mlc(const Graph& g, NodeId seed, const DetectionParams& params = {});
CommunityResult s_mlc(const Graph& g, std::string_view seed_label, const DetectionParams& params = {});

}  // namespace smlc
