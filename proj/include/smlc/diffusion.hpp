#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "smlc/graph.hpp"

namespace smlc {

// Sparse node -> mass mapping, ordered by node index. Only positive entries
// are stored.
class DiffusionVector {
 public:
  DiffusionVector() = default;
  // Keeps the entries of `dense` that are > 0.
  static DiffusionVector from_dense(const std::vector<double>& dense);
  // Entries in any order; non-positive values are dropped.
  static DiffusionVector from_entries(std::vector<std::pair<NodeId, double>> entries);

  std::size_t size() const noexcept { return nodes_.size(); }
  bool empty() const noexcept { return nodes_.empty(); }
  double at(NodeId v) const;
  double total() const;
  NodeSet support() const { return NodeSet(nodes_); }
  std::vector<double> to_dense(std::size_t n) const;

  const std::vector<NodeId>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& mass() const noexcept { return mass_; }

 private:
  std::vector<NodeId> nodes_;
  std::vector<double> mass_;
};

struct PprParams {
  double alpha = 0.99;     // probability of following an edge
  double epsilon = 1e-3;   // push threshold per unit degree

  void validate() const;
};

struct PprResult {
  DiffusionVector approximation;  // p'
  DiffusionVector residual;       // r
  std::size_t pushes = 0;
};

// Push-based approximate PageRank with a FIFO queue. Each push moves
// (1-alpha) of the residual into p', keeps alpha/2 at the node and spreads
// alpha/2 evenly over its neighbours. The seed is always pushed once.
// On return r[v] < epsilon * d(v) for every v and sum(p') + sum(r) = 1.
PprResult approximate_ppr(const Graph& g, NodeId seed, const PprParams& params);

// Teleport parameter under which the restart recursion
//   p = alpha * P p + (1 - alpha) * e_seed,   P = A D^-1,
// has the same fixed point as the lazy walk used by approximate_ppr.
double lazy_walk_alpha(double alpha);

// Dense solution of the restart recursion above by fixed-point iteration,
// stopped once successive iterates differ by less than tol in max-norm.
std::vector<double> exact_ppr(const Graph& g, NodeId seed, double alpha, double tol);

class HkParams {
 public:
  HkParams(double t, double epsilon);

  // The two settings used for sampling experiments.
  static HkParams coarse() { return {80.0, 1e-2}; }
  static HkParams fine() { return {40.0, 1e-3}; }

  double t() const noexcept { return t_; }
  double epsilon() const noexcept { return epsilon_; }
  // Taylor truncation degree, ceil(2 t ln(1/epsilon)).
  std::size_t terms() const noexcept { return terms_; }
  // psi_0..psi_N with psi_N = 1, psi_j = 1 + t/(j+1) * psi_{j+1}.
  const std::vector<double>& psi() const noexcept { return psi_; }

 private:
  double t_;
  double epsilon_;
  std::size_t terms_;
  std::vector<double> psi_;
};

// Heat-kernel relaxation. The returned vector approximates
// h = e^-t sum_k t^k/k! P^k e_seed with max_v |h[v] - h'[v]| / d(v) < epsilon.
DiffusionVector hk_relax(const Graph& g, NodeId seed, const HkParams& params);

// Dense truncated series e^-t sum_{k=0}^{terms} t^k/k! P^k e_seed.
std::vector<double> exact_hk(const Graph& g, NodeId seed, double t, std::size_t terms);

}  // namespace smlc
