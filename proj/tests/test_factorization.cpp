#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "smlc/factorization.hpp"

using namespace smlc;

namespace {

Matrix random_nonneg(Index rows, Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = unit(rng);
  return m;
}

Matrix random_signed(Index rows, Index cols, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j)
    for (Index i = 0; i < rows; ++i) m(i, j) = unit(rng);
  return m;
}

// Relative tolerance, with a floor at rounding level of the starting objective.
void check_nonincreasing(const std::vector<double>& trace) {
  const double floor = 1e-14 * trace.front();
  for (std::size_t i = 1; i < trace.size(); ++i)
    CHECK(trace[i] <= trace[i - 1] * (1.0 + 1e-8) + floor);
}

}  // namespace

TEST_SUITE("factorization") {
  TEST_CASE("random factors lie in (0.01, 1]") {
    Matrix m = random_factor(30, 7, 42);
    CHECK(m.minCoeff() > 0.01);
    CHECK(m.maxCoeff() <= 1.0);
    CHECK(random_factor(3, 3, 1) == random_factor(3, 3, 1));
  }

  TEST_CASE("Frobenius updates recover a rank-one matrix") {
    Vector w(6), h(5);
    w << 1, 2, 0.5, 3, 1, 0.2;
    h << 0.3, 1, 2, 0.7, 1.5;
    Matrix A = w * h.transpose();
    NmfParams p;
    p.rel_tol = 0.0;
    p.max_outer_iters = 500;
    FactorPair f = nmf_frobenius(A, 1, p);
    CHECK(f.objective_trace.back() < 1e-6 * A.squaredNorm());
    check_nonincreasing(f.objective_trace);
  }

  TEST_CASE("Frobenius trace on a zero matrix shrinks") {
    FactorPair f = nmf_frobenius(Matrix::Zero(8, 8), 2, {});
    CHECK(f.objective_trace.back() < f.objective_trace.front());
    check_nonincreasing(f.objective_trace);
  }

  TEST_CASE("Frobenius updates are monotone on random input") {
    std::mt19937_64 rng(1);
    Matrix A = random_nonneg(50, 50, rng);
    NmfParams p;
    p.max_outer_iters = 200;
    p.rel_tol = 0.0;
    FactorPair f = nmf_frobenius(A, 5, p);
    CHECK(f.objective_trace.size() == 201);
    check_nonincreasing(f.objective_trace);
  }

  TEST_CASE("KL updates fit an exact product") {
    std::mt19937_64 rng(2);
    Matrix A = random_nonneg(12, 2, rng) * random_nonneg(2, 10, rng);
    NmfParams p;
    p.max_outer_iters = 3000;
    p.rel_tol = 0.0;
    FactorPair f = nmf_kl(A, 2, p);
    CHECK(f.objective_trace.back() < 1e-4);
    check_nonincreasing(f.objective_trace);
  }

  TEST_CASE("KL zero row drives its W row to zero") {
    std::mt19937_64 rng(3);
    Matrix A = random_nonneg(10, 10, rng);
    A.row(4).setZero();
    NmfParams p;
    p.max_outer_iters = 500;
    p.rel_tol = 0.0;
    FactorPair f = nmf_kl(A, 3, p);
    CHECK(f.W.row(4).maxCoeff() < 1e-3);
  }

  TEST_CASE("KL updates are monotone on random input") {
    std::mt19937_64 rng(4);
    Matrix A = random_nonneg(30, 30, rng);
    FactorPair f = nmf_kl(A, 3, {});
    check_nonincreasing(f.objective_trace);
  }

  TEST_CASE("rank larger than the matrix is rejected") {
    Matrix A = Matrix::Ones(3, 4);
    CHECK_THROWS_AS(nmf_frobenius(A, 4, {}), std::domain_error);
    CHECK_THROWS_AS(nmf_kl(A, 4, {}), std::domain_error);
    CHECK_THROWS_AS(snmf(A, 4, {}), std::domain_error);
    CHECK_THROWS_AS(snmf(-A, 2, {}), std::domain_error);
  }

  TEST_CASE("SNMF objective trace is monotone") {
    std::mt19937_64 rng(5);
    Matrix A = random_nonneg(50, 50, rng);
    FactorPair f = snmf(A, 5, {});
    check_nonincreasing(f.objective_trace);
    CHECK(f.W.minCoeff() >= 0.0);
    CHECK(f.H.minCoeff() >= 0.0);
  }

  TEST_CASE("SNMF with beta zero matches plain NMF on a rank-one matrix") {
    Vector w(8), h(8);
    w << 1, 2, 3, 1, 2, 3, 1, 2;
    h << 2, 1, 1, 0.5, 1, 2, 1, 1;
    Matrix A = w * h.transpose();
    SnmfParams sp;
    sp.beta = 0.0;
    FactorPair s = snmf(A, 1, sp);
    NmfParams np;
    np.max_outer_iters = 2000;
    FactorPair n = nmf_frobenius(A, 1, np);
    CHECK(snmf_objective(A, s.W, s.H, 0.0) == doctest::Approx(frobenius_objective(A, s.W, s.H)));
    CHECK(s.objective_trace.back() <= 1.05 * n.objective_trace.back() + 1e-9);
  }

  TEST_CASE("SNMF separates two disjoint cliques") {
    Matrix A = Matrix::Zero(20, 20);
    A.block(0, 0, 10, 10).setOnes();
    A.block(10, 10, 10, 10).setOnes();
    A.diagonal().setZero();
    FactorPair f = snmf(A, 2, {});
    Matrix H = normalize_columns(f.H).H;
    int first = H(0, 0) >= 0.9 ? 0 : 1;
    for (Index j = 0; j < 20; ++j) {
      CHECK(H.col(j).maxCoeff() >= 0.9);
      const int row = H(0, j) >= 0.9 ? 0 : 1;
      CHECK((row == first) == (j < 10));
    }
  }

  TEST_CASE("NNLS projection cases") {
    Matrix I = Matrix::Identity(3, 3);
    Matrix D(3, 2);
    D << 1, -1, 2, 0.5, -3, 4;
    NnlsResult r = nnls_solve(I, D);
    CHECK((r.X - D.cwiseMax(0.0)).cwiseAbs().maxCoeff() < 1e-14);
    Matrix P = D.cwiseAbs();
    CHECK((nnls_solve(I, P).X - P).cwiseAbs().maxCoeff() < 1e-14);
  }

  TEST_CASE("NNLS zero columns are reported and zeroed") {
    Matrix C(3, 2);
    C << 1, 0, 2, 0, 1, 0;
    Matrix D = Matrix::Ones(3, 1);
    NnlsResult r = nnls_solve(C, D);
    REQUIRE(r.zero_columns.size() == 1);
    CHECK(r.zero_columns[0] == 1);
    CHECK(r.X(1, 0) == 0.0);
    CHECK(r.X(0, 0) == doctest::Approx(4.0 / 6.0));
  }

  TEST_CASE("NNLS matches exhaustive active-set enumeration") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
      Matrix C = random_signed(6, 4, rng);
      Matrix D = random_signed(6, 2, rng);
      NnlsResult r = nnls_solve(C, D);
      CHECK(r.X.minCoeff() >= 0.0);
      for (Index j = 0; j < 2; ++j) {
        const double got = (C * r.X.col(j) - D.col(j)).squaredNorm();
        CHECK(got == doctest::Approx(smlc::testing::brute_force_nnls(C, D.col(j))).epsilon(1e-6));
      }
      Matrix grad = C.transpose() * (C * r.X - D);
      CHECK(r.X.cwiseProduct(grad).cwiseAbs().maxCoeff() < 1e-8);
      CHECK(grad.minCoeff() >= -1e-6);
    }
  }

  TEST_CASE("NNLS warm start reaches the same optimum") {
    std::mt19937_64 rng(7);
    Matrix C = random_signed(10, 5, rng);
    Matrix D = random_signed(10, 3, rng);
    Matrix G = C.transpose() * C;
    Matrix B = C.transpose() * D;
    Matrix cold = nnls_gram(G, B).X;
    Matrix warm_start = random_nonneg(5, 3, rng);
    Matrix warm = nnls_gram(G, B, &warm_start).X;
    CHECK((cold - warm).cwiseAbs().maxCoeff() < 1e-9);
  }

  TEST_CASE("Hoyer sparseness") {
    CHECK(sparseness(Vector::Unit(4, 0)) == doctest::Approx(1.0));
    CHECK(sparseness(Vector::Constant(4, 0.7)) == doctest::Approx(0.0).epsilon(1e-12));
    Vector v(2);
    v << 3, 1;
    const double expected = (std::sqrt(2.0) - 4.0 / std::sqrt(10.0)) / (std::sqrt(2.0) - 1.0);
    CHECK(sparseness(v) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(0.3604).epsilon(1e-3));
    CHECK_THROWS_AS(sparseness(Vector::Ones(1)), std::domain_error);
    CHECK_THROWS_AS(sparseness(Vector::Zero(3)), std::domain_error);
  }

  TEST_CASE("sparseness is scale invariant") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> scale(1e-3, 1e3);
    for (int trial = 0; trial < 200; ++trial) {
      Vector h = random_nonneg(7, 1, rng).col(0);
      const double s = sparseness(h);
      CHECK(s >= 0.0);
      CHECK(s <= 1.0);
      CHECK(std::abs(sparseness(Vector(h * scale(rng))) - s) < 1e-12);
    }
  }

  TEST_CASE("column normalization") {
    Matrix H(2, 3);
    H << 2, 1, 0, 2, 0, 0;
    NormalizedColumns n = normalize_columns(H);
    CHECK(n.H(0, 0) == 0.5);
    CHECK(n.H(1, 0) == 0.5);
    CHECK(n.H(0, 1) == 1.0);
    CHECK(n.H(1, 1) == 0.0);
    CHECK(n.H(0, 2) == 0.5);
    REQUIRE(n.degenerate.size() == 1);
    CHECK(n.degenerate[0] == 2);
  }
}
