#include "smlc/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace smlc {

namespace {

constexpr double kDenominatorGuard = 1e-12;

void check_problem(const Matrix& A, Index k) {
  if (k < 1) throw std::domain_error("factorization rank must be at least 1");
  if (k > std::min(A.rows(), A.cols()))
    throw std::domain_error("factorization rank exceeds matrix dimension");
  if (A.size() > 0 && A.minCoeff() < 0.0) throw std::domain_error("input matrix must be nonnegative");
}

bool converged(double previous, double current, double rel_tol) {
  if (current <= 0.0) return true;
  return previous - current < rel_tol * previous;
}

// Lawson-Hanson for one right-hand side on the normal equations. x holds a
// nonnegative starting point on entry and the solution on exit.
void lawson_hanson(const Matrix& G, const Vector& b, const std::vector<bool>& usable, Vector& x) {
  const Index q = G.rows();
  const int max_steps = static_cast<int>(3 * q + 10);
  const double tol = 1e-11 * (1.0 + b.cwiseAbs().maxCoeff() + G.diagonal().cwiseAbs().maxCoeff());

  std::vector<bool> passive(static_cast<std::size_t>(q), false);
  for (Index i = 0; i < q; ++i) {
    if (!usable[i] || !(x[i] > 0.0)) x[i] = 0.0;
    passive[i] = x[i] > 0.0;
  }

  std::vector<Index> idx;
  Vector s = Vector::Zero(q);
  auto solve_passive = [&] {
    idx.clear();
    for (Index i = 0; i < q; ++i)
      if (passive[i]) idx.push_back(i);
    s.setZero();
    if (idx.empty()) return;
    const Index p = static_cast<Index>(idx.size());
    Matrix gp(p, p);
    Vector bp(p);
    for (Index r = 0; r < p; ++r) {
      bp[r] = b[idx[r]];
      for (Index c = 0; c < p; ++c) gp(r, c) = G(idx[r], idx[c]);
    }
    Vector sp = gp.ldlt().solve(bp);
    for (Index r = 0; r < p; ++r) s[idx[r]] = sp[r];
  };

  // Moves x towards the unconstrained passive-set solution while staying
  // feasible, dropping variables that hit zero.
  auto settle = [&] {
    for (int step = 0; step < max_steps; ++step) {
      solve_passive();
      double alpha = 1.0;
      Index blocking = -1;
      for (Index i : idx) {
        if (s[i] <= 0.0) {
          double a = x[i] / (x[i] - s[i]);
          if (blocking < 0 || a < alpha) {
            alpha = a;
            blocking = i;
          }
        }
      }
      if (blocking < 0) {
        x = s;
        return;
      }
      x += alpha * (s - x);
      x[blocking] = 0.0;
      for (Index i : idx) {
        if (x[i] <= 0.0) {
          x[i] = 0.0;
          passive[i] = false;
        }
      }
    }
    x = x.cwiseMax(0.0);
  };

  if (std::find(passive.begin(), passive.end(), true) != passive.end()) settle();

  for (int step = 0; step < max_steps; ++step) {
    Vector w = b - G * x;
    Index best = -1;
    for (Index i = 0; i < q; ++i) {
      if (passive[i] || !usable[i] || w[i] <= tol) continue;
      if (best < 0 || w[i] > w[best]) best = i;
    }
    if (best < 0) break;
    passive[best] = true;
    settle();
  }
}

}  // namespace

double frobenius_objective(const Matrix& A, const Matrix& W, const Matrix& H) {
  return (A - W * H).squaredNorm();
}

double kl_objective(const Matrix& A, const Matrix& W, const Matrix& H) {
  const Matrix wh = W * H;
  double sum = 0.0;
  for (Index j = 0; j < A.cols(); ++j) {
    for (Index i = 0; i < A.rows(); ++i) {
      const double a = A(i, j);
      const double y = wh(i, j);
      if (a > 0.0) {
        sum += a * std::log(a / std::max(y, std::numeric_limits<double>::min())) - a + y;
      } else {
        sum += y;
      }
    }
  }
  return sum;
}

double snmf_objective(const Matrix& A, const Matrix& W, const Matrix& H, double beta) {
  return frobenius_objective(A, W, H) + beta * H.colwise().sum().squaredNorm();
}

Matrix random_factor(Index rows, Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix out(rows, cols);
  // 1 - 0.99 u maps [0, 1) onto (0.01, 1].
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) out(i, j) = 1.0 - 0.99 * unit(rng);
  return out;
}

namespace {

FactorPair initial_pair(const Matrix& A, Index k, std::uint64_t seed) {
  return {random_factor(A.rows(), k, seed), random_factor(k, A.cols(), seed ^ 0x9e3779b97f4a7c15ULL),
          {}};
}

}  // namespace

FactorPair nmf_frobenius(const Matrix& A, Index k, const NmfParams& params) {
  check_problem(A, k);
  FactorPair f = initial_pair(A, k, params.rng_seed);
  f.objective_trace.push_back(frobenius_objective(A, f.W, f.H));
  for (int it = 0; it < params.max_outer_iters; ++it) {
    const Matrix wt = f.W.transpose();
    f.H.array() *= (wt * A).array() / (((wt * f.W) * f.H).array() + kDenominatorGuard);
    const Matrix ht = f.H.transpose();
    f.W.array() *= (A * ht).array() / ((f.W * (f.H * ht)).array() + kDenominatorGuard);
    f.objective_trace.push_back(frobenius_objective(A, f.W, f.H));
    if (converged(f.objective_trace[f.objective_trace.size() - 2], f.objective_trace.back(),
                  params.rel_tol))
      break;
  }
  return f;
}

FactorPair nmf_kl(const Matrix& A, Index k, const NmfParams& params) {
  check_problem(A, k);
  FactorPair f = initial_pair(A, k, params.rng_seed);
  f.objective_trace.push_back(kl_objective(A, f.W, f.H));
  for (int it = 0; it < params.max_outer_iters; ++it) {
    Matrix ratio = A.array() / ((f.W * f.H).array() + kDenominatorGuard);
    const Vector w_colsum = f.W.colwise().sum().transpose();
    f.H.array() *= (f.W.transpose() * ratio).array().colwise() /
                   (w_colsum.array() + kDenominatorGuard);
    ratio = A.array() / ((f.W * f.H).array() + kDenominatorGuard);
    const Eigen::RowVectorXd h_rowsum = f.H.rowwise().sum().transpose();
    f.W.array() *= (ratio * f.H.transpose()).array().rowwise() /
                   (h_rowsum.array() + kDenominatorGuard);
    f.objective_trace.push_back(kl_objective(A, f.W, f.H));
    if (converged(f.objective_trace[f.objective_trace.size() - 2], f.objective_trace.back(),
                  params.rel_tol))
      break;
  }
  return f;
}

FactorPair snmf(const Matrix& A, Index k, const SnmfParams& params) {
  check_problem(A, k);
  if (!(params.beta >= 0.0)) throw std::domain_error("beta must be nonnegative");
  FactorPair f = initial_pair(A, k, params.rng_seed);
  f.objective_trace.push_back(snmf_objective(A, f.W, f.H, params.beta));
  const Matrix ones = Matrix::Constant(k, k, params.beta);
  Matrix wt = f.W.transpose();
  for (int it = 0; it < params.max_outer_iters; ++it) {
    const Matrix hht = f.H * f.H.transpose();
    wt = nnls_gram(hht, f.H * A.transpose(), &wt).X;
    f.W = wt.transpose();
    const Matrix gram = wt * f.W + ones;
    f.H = nnls_gram(gram, wt * A, &f.H).X;
    f.objective_trace.push_back(snmf_objective(A, f.W, f.H, params.beta));
    if (converged(f.objective_trace[f.objective_trace.size() - 2], f.objective_trace.back(),
                  params.rel_tol))
      break;
  }
  return f;
}

NnlsResult nnls_gram(const Matrix& G, const Matrix& B, const Matrix* warm) {
  const Index q = G.rows();
  if (G.cols() != q || B.rows() != q) throw std::domain_error("nnls dimension mismatch");
  if (warm && (warm->rows() != q || warm->cols() != B.cols()))
    throw std::domain_error("nnls warm start dimension mismatch");
  NnlsResult out{Matrix::Zero(q, B.cols()), {}};
  std::vector<bool> usable(static_cast<std::size_t>(q));
  for (Index i = 0; i < q; ++i) {
    usable[i] = G(i, i) > 0.0;
    if (!usable[i]) out.zero_columns.push_back(i);
  }
  for (Index j = 0; j < B.cols(); ++j) {
    Vector x = warm ? Vector(warm->col(j)) : Vector::Zero(q);
    lawson_hanson(G, B.col(j), usable, x);
    out.X.col(j) = x;
  }
  return out;
}

NnlsResult nnls_solve(const Matrix& C, const Matrix& D) {
  if (C.rows() != D.rows()) throw std::domain_error("nnls dimension mismatch");
  const Matrix ct = C.transpose();
  return nnls_gram(ct * C, ct * D);
}

double sparseness(std::span<const double> h) {
  const std::size_t n = h.size();
  if (n < 2) throw std::domain_error("sparseness needs at least two entries");
  double l1 = 0.0, l2 = 0.0;
  for (double v : h) {
    l1 += std::abs(v);
    l2 += v * v;
  }
  if (l2 == 0.0) throw std::domain_error("sparseness of a zero vector is undefined");
  const double root_n = std::sqrt(static_cast<double>(n));
  const double s = (root_n - l1 / std::sqrt(l2)) / (root_n - 1.0);
  return std::clamp(s, 0.0, 1.0);
}

double sparseness(const Vector& h) {
  return sparseness(std::span<const double>(h.data(), static_cast<std::size_t>(h.size())));
}

NormalizedColumns normalize_columns(const Matrix& H) {
  NormalizedColumns out{H, {}};
  for (Index j = 0; j < H.cols(); ++j) {
    const double sum = H.col(j).sum();
    if (sum > 0.0) {
      out.H.col(j) /= sum;
    } else {
      out.H.col(j).setConstant(1.0 / static_cast<double>(H.rows()));
      out.degenerate.push_back(j);
    }
  }
  return out;
}

}  // namespace smlc
