#include "smlc/detection.hpp"

#include <algorithm>
#include <stdexcept>

namespace smlc {

void DetectionParams::validate() const {
  if (theta_override && !(*theta_override > 0.0 && *theta_override <= 1.0))
    throw std::domain_error("theta must lie in (0, 1]");
  if (votes < 1) throw std::domain_error("votes must be at least 1");
  estimation.validate();
}

std::vector<NodeSet> threshold_memberships(const Matrix& H, double theta) {
  if (!(theta > 0.0)) throw std::domain_error("theta must be positive");
  std::vector<NodeSet> out;
  out.reserve(static_cast<std::size_t>(H.rows()));
  for (Index i = 0; i < H.rows(); ++i) {
    std::vector<NodeId> members;
    for (Index j = 0; j < H.cols(); ++j)
      if (H(i, j) >= theta) members.push_back(static_cast<NodeId>(j));
    out.emplace_back(std::move(members));
  }
  return out;
}

std::vector<NodeSet> assign_communities(const Matrix& H, NodeId seed_local, double theta) {
  if (seed_local >= H.cols()) throw std::domain_error("seed column out of range");
  std::vector<NodeSet> out;
  for (auto& c : threshold_memberships(H, theta))
    if (c.contains(seed_local)) out.push_back(std::move(c));
  sort_communities(out);
  return out;
}

void sort_communities(std::vector<NodeSet>& communities) {
  std::sort(communities.begin(), communities.end(), [](const NodeSet& a, const NodeSet& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
}

CommunityResult s_mlc(const Graph& g, NodeId seed, const DetectionParams& params) {
  params.validate();
  CommunityResult out;
  out.sample = local_sample(g, seed, params.diffusion);
  out.estimation = params.votes > 1
                       ? estimate_k_voted(out.sample.graph(), params.estimation, params.votes)
                       : estimate_k(out.sample.graph(), params.estimation);
  out.k_prime = out.estimation.k_prime;
  out.membership = out.estimation.H_normalized;
  out.theta = params.theta_override.value_or(1.0 / out.k_prime);

  const auto& to_parent = out.sample.sub.to_parent;
  for (const auto& local : assign_communities(out.membership, out.sample.seed_local, out.theta)) {
    std::vector<NodeId> members;
    members.reserve(local.size());
    for (NodeId v : local) members.push_back(to_parent[v]);
    out.communities.emplace_back(std::move(members));
  }
  sort_communities(out.communities);
  return out;
}

CommunityResult s_mlc(const Graph& g, std::string_view seed_label, const DetectionParams& params) {
  return s_mlc(g, g.index_of(seed_label), params);
}

}  // namespace smlc
