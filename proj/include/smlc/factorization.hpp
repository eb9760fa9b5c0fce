#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace smlc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

struct NmfParams {
  int max_outer_iters = 300;
  double rel_tol = 1e-5;
  std::uint64_t rng_seed = 0;
};

struct SnmfParams {
  double beta = 1e-4;  // weight of the squared L1 norm of each column of H
  int max_outer_iters = 300;
  double rel_tol = 1e-5;
  std::uint64_t rng_seed = 0;
};

// A ~ W H with W (rows x k) and H (k x cols), both nonnegative.
struct FactorPair {
  Matrix W;
  Matrix H;
  // Objective at initialization followed by one value per outer iteration.
  std::vector<double> objective_trace;
};

double frobenius_objective(const Matrix& A, const Matrix& W, const Matrix& H);
double kl_objective(const Matrix& A, const Matrix& W, const Matrix& H);
double snmf_objective(const Matrix& A, const Matrix& W, const Matrix& H, double beta);

// Entries uniform in (0.01, 1].
Matrix random_factor(Index rows, Index cols, std::uint64_t seed);

// Lee-Seung multiplicative updates for ||A - WH||_F^2.
FactorPair nmf_frobenius(const Matrix& A, Index k, const NmfParams& params = {});
// Lee-Seung multiplicative updates for the generalized KL divergence.
FactorPair nmf_kl(const Matrix& A, Index k, const NmfParams& params = {});

// Sparse NMF on the columns of H,
//   min ||A - WH||_F^2 + beta * sum_j ||h_j||_1^2,
// by alternating nonnegativity-constrained least squares: first W given H,
// then H given W through the stacked system [W; sqrt(beta) 1] H ~ [A; 0].
FactorPair snmf(const Matrix& A, Index k, const SnmfParams& params = {});

struct NnlsResult {
  Matrix X;
  // Columns of C that are identically zero; the matching rows of X are 0.
  std::vector<Index> zero_columns;
};

// min_{X >= 0} ||C X - D||_F^2, column by column, with the Lawson-Hanson
// active-set method on the normal equations.
NnlsResult nnls_solve(const Matrix& C, const Matrix& D);

// Same problem given the Gram matrix G = C^T C and B = C^T D. When `warm` is
// non-null its support seeds the passive set of each column.
NnlsResult nnls_gram(const Matrix& G, const Matrix& B, const Matrix* warm = nullptr);

// Hoyer sparseness in [0, 1]: 1 for a one-hot vector, 0 for a constant one.
double sparseness(std::span<const double> h);
double sparseness(const Vector& h);

struct NormalizedColumns {
  Matrix H;
  // Columns that summed to zero; they are set to the uniform 1/k vector.
  std::vector<Index> degenerate;
};

// Scales every column to unit sum.
NormalizedColumns normalize_columns(const Matrix& H);

}  // namespace smlc
