#include "smlc/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace smlc {

GroundTruth load_ground_truth(const std::string& path, const Graph& g) {
  return {load_communities_file(path, g), path};
}

std::vector<NodeSet> communities_containing(std::span<const NodeSet> communities, NodeId seed) {
  std::vector<NodeSet> out;
  for (const auto& c : communities)
    if (c.contains(seed)) out.push_back(c);
  return out;
}

double conductance(const Graph& g, const NodeSet& c) {
  if (c.empty()) throw std::domain_error("conductance of the empty set is undefined");
  const double vol = static_cast<double>(g.volume(c));
  const double rest = static_cast<double>(g.total_volume()) - vol;
  const double denom = std::min(vol, rest);
  if (denom <= 0.0) throw std::domain_error("conductance undefined: set or complement has zero volume");
  std::size_t cut = 0;
  for (NodeId u : c)
    for (NodeId v : g.neighbors(u))
      if (!c.contains(v)) ++cut;
  return static_cast<double>(cut) / denom;
}

double recall(const NodeSet& gt_community, std::span<const NodeSet> detected) {
  if (gt_community.empty()) throw std::domain_error("ground-truth community is empty");
  std::size_t best = 0;
  for (const auto& d : detected) best = std::max(best, gt_community.intersection_size(d));
  return static_cast<double>(best) / static_cast<double>(gt_community.size());
}

double precision(const NodeSet& detected_community, std::span<const NodeSet> gt) {
  if (detected_community.empty()) return 0.0;
  std::size_t best = 0;
  for (const auto& c : gt) best = std::max(best, detected_community.intersection_size(c));
  return static_cast<double>(best) / static_cast<double>(detected_community.size());
}

double f_score(double prec, double rec, int sigma) {
  const double s2 = static_cast<double>(sigma) * sigma;
  const double denom = s2 * prec + rec;
  if (denom <= 0.0) return 0.0;
  return (1.0 + s2) * prec * rec / denom;
}

namespace {

std::optional<double> maybe_conductance(const Graph& g, const NodeSet& c) {
  const std::size_t vol = g.volume(c);
  if (c.empty() || vol == 0 || vol == g.total_volume()) return std::nullopt;
  return conductance(g, c);
}

double ratio(std::size_t a, std::size_t b) {
  return b == 0 ? 0.0 : static_cast<double>(a) / static_cast<double>(b);
}

std::optional<double> mean_of(const std::vector<std::optional<double>>& xs) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& x : xs) {
    if (!x) continue;
    sum += *x;
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / static_cast<double>(count);
}

}  // namespace

EvalReport evaluate(const Graph& g, std::span<const NodeSet> ground_truth,
                    std::span<const NodeSet> detected, NodeId seed) {
  const std::vector<NodeSet> gt = communities_containing(ground_truth, seed);
  if (gt.empty())
    throw std::domain_error("seed '" + g.label(seed) + "' belongs to no ground-truth community");

  EvalReport report;
  std::vector<std::optional<double>> det_cond, gt_cond;
  for (const auto& d : detected) {
    DetectedScore s;
    s.community = d;
    std::size_t best = 0;
    for (std::size_t i = 0; i < gt.size(); ++i) {
      const std::size_t overlap = d.intersection_size(gt[i]);
      if (i == 0 || overlap > best) {
        best = overlap;
        s.matched = i;
      }
    }
    s.precision = ratio(best, d.size());
    const double rec = ratio(best, gt[s.matched].size());
    s.f1 = f_score(s.precision, rec, 1);
    s.f2 = f_score(s.precision, rec, 2);
    s.conductance = maybe_conductance(g, d);
    det_cond.push_back(s.conductance);
    report.mean_precision += s.precision;
    report.detected.push_back(std::move(s));
  }
  for (const auto& c : gt) {
    GroundTruthScore s;
    s.community = c;
    std::size_t best = 0;
    for (std::size_t i = 0; i < detected.size(); ++i) {
      const std::size_t overlap = c.intersection_size(detected[i]);
      if (!s.matched || overlap > best) {
        best = overlap;
        s.matched = i;
      }
    }
    s.recall = ratio(best, c.size());
    if (s.matched) {
      const double prec = ratio(best, detected[*s.matched].size());
      s.f1 = f_score(prec, s.recall, 1);
      s.f2 = f_score(prec, s.recall, 2);
    }
    s.conductance = maybe_conductance(g, c);
    gt_cond.push_back(s.conductance);
    report.mean_recall += s.recall;
    report.ground_truth.push_back(std::move(s));
  }
  if (!detected.empty()) report.mean_precision /= static_cast<double>(detected.size());
  report.mean_recall /= static_cast<double>(gt.size());
  report.f1 = f_score(report.mean_precision, report.mean_recall, 1);
  report.f2 = f_score(report.mean_precision, report.mean_recall, 2);
  report.mean_conductance = mean_of(det_cond);
  report.mean_gt_conductance = mean_of(gt_cond);
  return report;
}

EvalReport evaluate(const Graph& g, const GroundTruth& gt, const CommunityResult& result) {
  const NodeId seed = result.sample.sub.to_parent.at(result.sample.seed_local);
  return evaluate(g, gt.communities, result.communities, seed);
}

}  // namespace smlc
