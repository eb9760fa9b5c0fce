#include "smlc/diffusion.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace smlc {

DiffusionVector DiffusionVector::from_dense(const std::vector<double>& dense) {
  DiffusionVector out;
  for (std::size_t v = 0; v < dense.size(); ++v) {
    if (dense[v] > 0.0) {
      out.nodes_.push_back(static_cast<NodeId>(v));
      out.mass_.push_back(dense[v]);
    }
  }
  return out;
}

DiffusionVector DiffusionVector::from_entries(std::vector<std::pair<NodeId, double>> entries) {
  std::sort(entries.begin(), entries.end());
  DiffusionVector out;
  for (auto [v, x] : entries) {
    if (x <= 0.0) continue;
    out.nodes_.push_back(v);
    out.mass_.push_back(x);
  }
  return out;
}

double DiffusionVector::at(NodeId v) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), v);
  if (it == nodes_.end() || *it != v) return 0.0;
  return mass_[static_cast<std::size_t>(it - nodes_.begin())];
}

double DiffusionVector::total() const {
  double sum = 0.0;
  for (double x : mass_) sum += x;
  return sum;
}

std::vector<double> DiffusionVector::to_dense(std::size_t n) const {
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < nodes_.size(); ++i) out.at(nodes_[i]) = mass_[i];
  return out;
}

void PprParams::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("alpha must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw std::domain_error("epsilon must be positive");
}

namespace {

void check_seed(const Graph& g, NodeId seed) {
  if (seed >= g.node_count()) throw std::domain_error("seed index out of range");
  if (g.degree(seed) == 0)
    throw std::domain_error("seed '" + g.label(seed) + "' is isolated; diffusion is undefined");
}

template <typename Map>
DiffusionVector to_vector(const Map& m, double scale = 1.0) {
  std::vector<std::pair<NodeId, double>> entries;
  entries.reserve(m.size());
  for (const auto& [v, x] : m) entries.emplace_back(v, x * scale);
  return DiffusionVector::from_entries(std::move(entries));
}

}  // namespace

PprResult approximate_ppr(const Graph& g, NodeId seed, const PprParams& params) {
  params.validate();
  check_seed(g, seed);
  const double alpha = params.alpha;
  const double eps = params.epsilon;

  std::unordered_map<NodeId, double> p;
  std::unordered_map<NodeId, double> r{{seed, 1.0}};
  std::unordered_set<NodeId> queued{seed};
  std::deque<NodeId> queue{seed};
  std::size_t pushes = 0;
  bool first = true;

  while (!queue.empty()) {
    NodeId u = queue.front();
    queue.pop_front();
    queued.erase(u);
    const double du = static_cast<double>(g.degree(u));
    double& ru = r[u];
    if (!first && ru < eps * du) continue;
    first = false;

    p[u] += (1.0 - alpha) * ru;
    const double remaining = alpha * ru;
    ru = remaining / 2.0;
    const double share = remaining / (2.0 * du);
    for (NodeId v : g.neighbors(u)) {
      double& rv = r[v];
      rv += share;
      if (rv >= eps * static_cast<double>(g.degree(v)) && queued.insert(v).second) queue.push_back(v);
    }
    if (ru >= eps * du && queued.insert(u).second) queue.push_back(u);
    ++pushes;
  }
  return {to_vector(p), to_vector(r), pushes};
}

double lazy_walk_alpha(double alpha) { return alpha / (2.0 - alpha); }

std::vector<double> exact_ppr(const Graph& g, NodeId seed, double alpha, double tol) {
  if (seed >= g.node_count()) throw std::domain_error("seed index out of range");
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");
  const std::size_t n = g.node_count();
  std::vector<double> p(n, 0.0), next(n, 0.0);
  p[seed] = 1.0;
  for (;;) {
    std::fill(next.begin(), next.end(), 0.0);
    for (NodeId u = 0; u < n; ++u) {
      if (p[u] == 0.0 || g.degree(u) == 0) continue;
      const double share = alpha * p[u] / static_cast<double>(g.degree(u));
      for (NodeId v : g.neighbors(u)) next[v] += share;
    }
    next[seed] += 1.0 - alpha;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) diff = std::max(diff, std::abs(next[i] - p[i]));
    p.swap(next);
    if (diff < tol) break;
  }
  return p;
}

HkParams::HkParams(double t, double epsilon) : t_(t), epsilon_(epsilon) {
  if (!(t > 0.0)) throw std::domain_error("heat-kernel temperature must be positive");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::domain_error("epsilon must lie in (0, 1)");
  terms_ = static_cast<std::size_t>(std::ceil(2.0 * t * std::log(1.0 / epsilon)));
  terms_ = std::max<std::size_t>(terms_, 1);
  psi_.assign(terms_ + 1, 1.0);
  for (std::size_t j = terms_; j-- > 0;)
    psi_[j] = 1.0 + t / static_cast<double>(j + 1) * psi_[j + 1];
}

DiffusionVector hk_relax(const Graph& g, NodeId seed, const HkParams& params) {
  check_seed(g, seed);
  const double t = params.t();
  const std::size_t big_n = params.terms();
  const auto& psi = params.psi();
  const double scale = std::exp(t) * params.epsilon() / (2.0 * static_cast<double>(big_n));

  // Residual entries are keyed by (node, series step).
  auto key = [big_n](NodeId v, std::size_t j) {
    return static_cast<std::uint64_t>(v) * (big_n + 1) + j;
  };
  std::unordered_map<NodeId, double> x;
  std::unordered_map<std::uint64_t, double> r{{key(seed, 0), 1.0}};
  std::deque<std::pair<NodeId, std::size_t>> queue{{seed, 0}};

  while (!queue.empty()) {
    auto [v, j] = queue.front();
    queue.pop_front();
    double& slot = r[key(v, j)];
    const double rvj = slot;
    slot = 0.0;
    x[v] += rvj;

    const double dv = static_cast<double>(g.degree(v));
    const double mass = t * rvj / (static_cast<double>(j + 1) * dv);
    for (NodeId u : g.neighbors(v)) {
      if (j + 1 == big_n) {
        x[u] += mass;
        continue;
      }
      double& next = r[key(u, j + 1)];
      const double thresh = scale * static_cast<double>(g.degree(u)) / psi[j + 1];
      if (next < thresh && next + mass >= thresh) queue.emplace_back(u, j + 1);
      next += mass;
    }
  }
  return to_vector(x, std::exp(-t));
}

std::vector<double> exact_hk(const Graph& g, NodeId seed, double t, std::size_t terms) {
  if (seed >= g.node_count()) throw std::domain_error("seed index out of range");
  const std::size_t n = g.node_count();
  std::vector<double> term(n, 0.0), next(n, 0.0), h(n, 0.0);
  term[seed] = std::exp(-t);
  h[seed] = term[seed];
  for (std::size_t k = 1; k <= terms; ++k) {
    std::fill(next.begin(), next.end(), 0.0);
    const double factor = t / static_cast<double>(k);
    for (NodeId u = 0; u < n; ++u) {
      if (term[u] == 0.0 || g.degree(u) == 0) continue;
      const double share = factor * term[u] / static_cast<double>(g.degree(u));
      for (NodeId v : g.neighbors(u)) next[v] += share;
    }
    term.swap(next);
    for (std::size_t i = 0; i < n; ++i) h[i] += term[i];
  }
  return h;
}

}  // namespace smlc
