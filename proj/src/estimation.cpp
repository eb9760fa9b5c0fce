#include "smlc/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <future>
#include <map>
#include <random>
#include <stdexcept>
#include <thread>

namespace smlc {

void EstimationParams::validate() const {
  if (k_max_divisor < 1) throw std::domain_error("k_max_divisor must be at least 1");
  if (!(beta >= 0.0)) throw std::domain_error("beta must be nonnegative");
  if (!(init_sparseness >= 0.0 && init_sparseness < 1.0))
    throw std::domain_error("init_sparseness must lie in [0, 1)");
  if (patience < 1) throw std::domain_error("patience must be at least 1");
  if (restarts < 1) throw std::domain_error("restarts must be at least 1");
}

Matrix adjacency_matrix(const Graph& g) {
  const auto n = static_cast<Index>(g.node_count());
  Matrix a = Matrix::Zero(n, n);
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (NodeId v : g.neighbors(u)) a(u, v) = 1.0;
  return a;
}

double mean_column_sparseness(const Matrix& H) {
  if (H.cols() == 0) return 0.0;
  double sum = 0.0;
  for (Index j = 0; j < H.cols(); ++j) {
    const Vector col = H.col(j);
    if (col.cwiseAbs().maxCoeff() > 0.0) sum += sparseness(col);
  }
  return sum / static_cast<double>(H.cols());
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  auto mix = [](std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ a) ^ b);
}

namespace {

struct Trial {
  double mean_over_nodes = 0.0;
  double mean_over_k = 0.0;
  Matrix H;
};

Trial run_trial(const Matrix& A, int k, const EstimationParams& params, int restart) {
  SnmfParams sp;
  sp.beta = params.beta;
  sp.rng_seed = derive_seed(params.rng_seed, static_cast<std::uint64_t>(k),
                            static_cast<std::uint64_t>(restart));
  FactorPair f = snmf(A, k, sp);
  Trial t;
  t.mean_over_nodes = mean_column_sparseness(f.H);
  t.mean_over_k = t.mean_over_nodes * static_cast<double>(A.cols()) / k;
  t.H = std::move(f.H);
  return t;
}

Trial best_of(std::vector<std::future<Trial>>& runs) {
  Trial best;
  bool first = true;
  for (auto& r : runs) {
    Trial t = r.get();
    if (first || t.mean_over_nodes > best.mean_over_nodes) best = std::move(t);
    first = false;
  }
  return best;
}

EstimationResult single_community(Index n, double best) {
  EstimationResult out;
  out.k_prime = 1;
  out.H_normalized = Matrix::Ones(1, n);
  out.best_sparseness = best;
  return out;
}

}  // namespace

EstimationResult estimate_k(const Graph& g_s, const EstimationParams& params) {
  params.validate();
  const auto n = static_cast<Index>(g_s.node_count());
  const int k_max = static_cast<int>(n / params.k_max_divisor);
  if (n < 8 || k_max < 2) {
    EstimationResult out = single_community(n, params.init_sparseness);
    out.degenerate = true;
    return out;
  }

  const Matrix A = adjacency_matrix(g_s);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int window = std::max(1, static_cast<int>(hw) / params.restarts);

  EstimationResult out = single_community(n, params.init_sparseness);
  Matrix best_H;
  double running = params.init_sparseness;
  int stale = 0;
  bool stop = false;

  for (int lo = 2; lo <= k_max && !stop; lo += window) {
    const int hi = std::min(k_max, lo + window - 1);
    std::vector<std::vector<std::future<Trial>>> pending;
    for (int k = lo; k <= hi; ++k) {
      auto& runs = pending.emplace_back();
      for (int r = 0; r < params.restarts; ++r)
        runs.push_back(std::async(std::launch::async, run_trial, std::cref(A), k,
                                  std::cref(params), r));
    }
    for (int k = lo; k <= hi; ++k) {
      Trial t = best_of(pending[static_cast<std::size_t>(k - lo)]);
      if (stop) continue;
      if (t.mean_over_nodes > running) {
        running = t.mean_over_nodes;
        out.k_prime = k;
        best_H = std::move(t.H);
        stale = 0;
      } else if (++stale >= params.patience) {
        stop = true;
      }
      out.sweep_trace.push_back({k, t.mean_over_nodes, t.mean_over_k, running});
    }
  }

  out.best_sparseness = running;
  if (out.k_prime > 1) out.H_normalized = normalize_columns(best_H).H;
  return out;
}

EstimationResult estimate_k_voted(const Graph& g_s, const EstimationParams& params, int votes) {
  if (votes < 1) throw std::domain_error("votes must be at least 1");
  std::vector<EstimationResult> results;
  for (int v = 0; v < votes; ++v) {
    EstimationParams p = params;
    p.rng_seed = params.rng_seed + static_cast<std::uint64_t>(v);
    results.push_back(estimate_k(g_s, p));
  }
  std::map<int, std::pair<int, double>> tally;  // k' -> (count, best sparseness)
  for (const auto& r : results) {
    auto& [count, best] = tally[r.k_prime];
    ++count;
    best = std::max(best, r.best_sparseness);
  }
  int winner = results.front().k_prime;
  for (const auto& [k, entry] : tally) {
    const auto& w = tally[winner];
    if (entry.first > w.first || (entry.first == w.first && entry.second > w.second)) winner = k;
  }
  std::vector<int> ballots;
  for (const auto& r : results) ballots.push_back(r.k_prime);
  for (auto& r : results) {
    if (r.k_prime == winner) {
      r.ballots = std::move(ballots);
      return std::move(r);
    }
  }
  return {};
}

Matrix modularity_matrix(const Graph& g) {
  if (g.edge_count() == 0) throw std::domain_error("modularity is undefined for an edgeless graph");
  const auto n = static_cast<Index>(g.node_count());
  Vector d(n);
  for (Index i = 0; i < n; ++i) d[i] = static_cast<double>(g.degree(static_cast<NodeId>(i)));
  return adjacency_matrix(g) - d * d.transpose() / static_cast<double>(g.total_volume());
}

double modularity_value(const Graph& g, std::span<const NodeSet> partition) {
  if (g.edge_count() == 0) throw std::domain_error("modularity is undefined for an edgeless graph");
  const std::size_t n = g.node_count();
  std::vector<int> owner(n, -1);
  for (std::size_t c = 0; c < partition.size(); ++c) {
    for (NodeId v : partition[c]) {
      if (v >= n) throw std::domain_error("partition names a node outside the graph");
      if (owner[v] >= 0) throw std::domain_error("partition blocks overlap");
      owner[v] = static_cast<int>(c);
    }
  }
  if (std::find(owner.begin(), owner.end(), -1) != owner.end())
    throw std::domain_error("partition does not cover every node");

  const double two_m = static_cast<double>(g.total_volume());
  std::vector<double> internal(partition.size(), 0.0), volume(partition.size(), 0.0);
  for (NodeId u = 0; u < n; ++u) {
    const auto c = static_cast<std::size_t>(owner[u]);
    volume[c] += static_cast<double>(g.degree(u));
    for (NodeId v : g.neighbors(u))
      if (owner[v] == owner[u]) internal[c] += 1.0;
  }
  double q = 0.0;
  for (std::size_t c = 0; c < partition.size(); ++c)
    q += internal[c] / two_m - (volume[c] / two_m) * (volume[c] / two_m);
  return q;
}

namespace {

Vector leading_eigenvector(const Matrix& M) {
  const Index n = M.rows();
  const double shift = M.cwiseAbs().rowwise().sum().maxCoeff();
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> unit(0.5, 1.5);
  Vector x(n);
  for (Index i = 0; i < n; ++i) x[i] = unit(rng);
  x.normalize();
  for (int it = 0; it < 10000; ++it) {
    Vector y = M * x + shift * x;
    const double norm = y.norm();
    if (norm == 0.0) return x;
    y /= norm;
    const double diff = (y - x).norm();
    x = std::move(y);
    if (diff < 1e-8) break;
  }
  return x;
}

}  // namespace

ModularityPartition modularity_estimate_k(const Graph& g) {
  const Matrix B = modularity_matrix(g);
  const double two_m = static_cast<double>(g.total_volume());
  std::deque<std::vector<NodeId>> open;
  std::vector<NodeSet> done;
  std::vector<NodeId> all(g.node_count());
  for (NodeId v = 0; v < all.size(); ++v) all[v] = v;
  open.push_back(std::move(all));

  while (!open.empty()) {
    std::vector<NodeId> group = std::move(open.front());
    open.pop_front();
    const auto size = static_cast<Index>(group.size());
    if (size < 2) {
      done.emplace_back(std::move(group));
      continue;
    }
    Matrix bg(size, size);
    for (Index i = 0; i < size; ++i)
      for (Index j = 0; j < size; ++j) bg(i, j) = B(group[i], group[j]);
    bg.diagonal() -= bg.rowwise().sum();

    const Vector lead = leading_eigenvector(bg);
    std::vector<NodeId> plus, minus;
    for (Index i = 0; i < size; ++i) (lead[i] >= 0.0 ? plus : minus).push_back(group[i]);

    // Q gain of the split is -2/(2m) times the B mass between the halves.
    double cross = 0.0;
    for (NodeId a : plus)
      for (NodeId b : minus) cross += B(a, b);
    const double gain = -2.0 * cross / two_m;
    if (plus.empty() || minus.empty() || !(gain > 1e-12)) {
      done.emplace_back(std::move(group));
      continue;
    }
    open.push_back(std::move(plus));
    open.push_back(std::move(minus));
  }

  std::sort(done.begin(), done.end());
  ModularityPartition out;
  out.k = static_cast<int>(done.size());
  out.q = modularity_value(g, done);
  out.partition = std::move(done);
  return out;
}

}  // namespace smlc
