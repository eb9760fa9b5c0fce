#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "smlc/detection.hpp"
#include "smlc/graph.hpp"

namespace smlc {

struct GroundTruth {
  std::vector<NodeSet> communities;
  std::string source;
};

GroundTruth load_ground_truth(const std::string& path, const Graph& g);

// Ground-truth communities that contain the seed.
std::vector<NodeSet> communities_containing(std::span<const NodeSet> communities, NodeId seed);

// cut(c) / min(vol(c), vol(V) - vol(c)).
double conductance(const Graph& g, const NodeSet& c);

// max over detected of |gt & det| / |gt|, 0 when detected is empty.
double recall(const NodeSet& gt_community, std::span<const NodeSet> detected);
// max over gt of |det & gt| / |det|, 0 when gt is empty.
double precision(const NodeSet& detected_community, std::span<const NodeSet> gt);

// (1 + s^2) p r / (s^2 p + r), 0 when p = r = 0.
double f_score(double prec, double rec, int sigma);

struct DetectedScore {
  NodeSet community;
  double precision = 0.0;
  std::size_t matched = 0;  // index of the ground-truth community achieving it
  double f1 = 0.0;          // against the matched community
  double f2 = 0.0;
  std::optional<double> conductance;  // absent when the community is all of V
};

struct GroundTruthScore {
  NodeSet community;
  double recall = 0.0;
  std::optional<std::size_t> matched;  // index into the detected list
  double f1 = 0.0;
  double f2 = 0.0;
  std::optional<double> conductance;
};

struct EvalReport {
  std::vector<DetectedScore> detected;
  std::vector<GroundTruthScore> ground_truth;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  double f1 = 0.0;  // from the mean precision and mean recall
  double f2 = 0.0;
  std::optional<double> mean_conductance;  // over detected communities
  std::optional<double> mean_gt_conductance;
};

// Scores detected communities for one seed. Ground truth is reduced to the
// communities containing the seed; none containing it is a domain error.
EvalReport evaluate(const Graph& g, std::span<const NodeSet> ground_truth,
                    std::span<const NodeSet> detected, NodeId seed);
EvalReport evaluate(const Graph& g, const GroundTruth& gt, const CommunityResult& result);

}  // namespace smlc
