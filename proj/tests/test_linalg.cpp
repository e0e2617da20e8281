#include <stdexcept>

#include "doctest.h"
#include "test_util.hpp"
#include "zsmap/linalg.hpp"

using zsmap::Matrix;
using zsmap::Vector;
namespace linalg = zsmap::linalg;

namespace {

// Kronecker-vectorization oracle: solves (T' (x) L + mu I) vec(W) = vec(N)
// with a generic dense solver. Only viable for small n*m.
Matrix kronecker_oracle(const Matrix& l, const Matrix& t, const Matrix& n,
                        double mu) {
  const Eigen::Index rows = l.rows();
  const Eigen::Index cols = t.rows();
  const Eigen::Index dim = rows * cols;
  Matrix big = Matrix::Zero(dim, dim);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index jj = 0; jj < cols; ++jj) {
      // vec is column-major: block (j, jj) couples W col jj to equation col j.
      big.block(j * rows, jj * rows, rows, rows) += t(jj, j) * l;
    }
  }
  big += mu * Matrix::Identity(dim, dim);
  Vector rhs(dim);
  for (Eigen::Index j = 0; j < cols; ++j) rhs.segment(j * rows, rows) = n.col(j);
  Vector sol = big.fullPivLu().solve(rhs);
  Matrix w(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) w.col(j) = sol.segment(j * rows, rows);
  return w;
}

}  // namespace

TEST_CASE("sym_eigen: identity and diagonal") {
  const auto e = linalg::sym_eigen(Matrix::Identity(3, 3));
  for (Eigen::Index i = 0; i < 3; ++i) {
    CHECK(e.eigenvalues(i) == doctest::Approx(1.0).epsilon(1e-12));
  }
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 2.0;
  d(2, 2) = 5.0;
  const auto ed = linalg::sym_eigen(d);
  CHECK(ed.eigenvalues(0) == doctest::Approx(0.0));
  CHECK(ed.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(ed.eigenvalues(2) == doctest::Approx(5.0));
}

TEST_CASE("sym_eigen: orthonormality and reconstruction on random input") {
  zsmap::Rng rng(21);
  Matrix a = test_util::random_matrix(rng, 20, 20);
  Matrix m = 0.5 * (a + a.transpose());
  const auto e = linalg::sym_eigen(m);
  CHECK((e.basis.transpose() * e.basis - Matrix::Identity(20, 20))
            .cwiseAbs()
            .maxCoeff() < 1e-8);
  const Matrix rec =
      e.basis * e.eigenvalues.asDiagonal() * e.basis.transpose();
  CHECK((rec - m).norm() < 1e-8 * std::max(1.0, m.norm()));
}

TEST_CASE("sym_eigen: rejects non-square and asymmetric input") {
  CHECK_THROWS_AS(linalg::sym_eigen(Matrix::Zero(2, 3)), std::invalid_argument);
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(linalg::sym_eigen(m), std::invalid_argument);
}

TEST_CASE("sylvester: trivial cases") {
  zsmap::Rng rng(22);
  const Matrix n = test_util::random_matrix(rng, 3, 2);
  // L = 0 -> mu W = N.
  {
    const Matrix w = linalg::solve_special_sylvester(
        Matrix::Zero(3, 3), Matrix::Identity(2, 2), n, 1.0);
    CHECK((w - n).cwiseAbs().maxCoeff() < 1e-12);
  }
  // L = I, T = I, mu = 1 -> W = N / 2.
  {
    const Matrix w = linalg::solve_special_sylvester(
        Matrix::Identity(3, 3), Matrix::Identity(2, 2), n, 1.0);
    CHECK((w - 0.5 * n).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("sylvester: matches the Kronecker oracle on 50 random instances") {
  zsmap::Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::Index rows = 2 + static_cast<Eigen::Index>(rng.index(9));
    const Eigen::Index cols = 2 + static_cast<Eigen::Index>(rng.index(9));
    const Matrix l = test_util::random_psd(rng, rows);
    const Matrix t = test_util::random_spd(rng, cols);
    const Matrix n = test_util::random_matrix(rng, rows, cols);
    const double mu = 0.05 + rng.uniform();
    const Matrix w = linalg::solve_special_sylvester(l, t, n, mu);
    const Matrix oracle = kronecker_oracle(l, t, n, mu);
    CHECK((w - oracle).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("sylvester: residual bound on larger instances") {
  zsmap::Rng rng(24);
  const Matrix l = test_util::random_psd(rng, 50);
  const Matrix t = test_util::random_spd(rng, 30);
  const Matrix n = test_util::random_matrix(rng, 50, 30);
  const double mu = 0.3;
  const Matrix w = linalg::solve_special_sylvester(l, t, n, mu);
  const double resid = (l * w * t + mu * w - n).norm();
  CHECK(resid <= 1e-8 * std::max(1.0, n.norm()));
}

TEST_CASE("sylvester: factorization reusable across right-hand sides") {
  zsmap::Rng rng(25);
  const Matrix l = test_util::random_psd(rng, 8);
  const Matrix t = test_util::random_spd(rng, 5);
  linalg::SylvesterFactorization fac(l, t);
  for (int trial = 0; trial < 5; ++trial) {
    const Matrix n = test_util::random_matrix(rng, 8, 5);
    const double mu = 0.1 + rng.uniform();
    const Matrix w = fac.solve(n, mu);
    CHECK((w - kronecker_oracle(l, t, n, mu)).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("sylvester: definiteness violations rejected") {
  Matrix neg = -Matrix::Identity(3, 3);
  CHECK_THROWS_AS(
      linalg::solve_special_sylvester(neg, Matrix::Identity(2, 2),
                                      Matrix::Zero(3, 2), 1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      linalg::solve_special_sylvester(Matrix::Identity(3, 3),
                                      Matrix::Zero(2, 2), Matrix::Zero(3, 2),
                                      1.0),
      std::invalid_argument);
  CHECK_THROWS_AS(
      linalg::solve_special_sylvester(Matrix::Identity(3, 3),
                                      Matrix::Identity(2, 2),
                                      Matrix::Zero(3, 2), 0.0),
      std::invalid_argument);
}

TEST_CASE("ridge_solve: identity, scaling, residual") {
  zsmap::Rng rng(26);
  const Matrix b = test_util::random_matrix(rng, 10, 4);
  CHECK((linalg::ridge_solve(Matrix::Identity(10, 10), b) - b)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  CHECK((linalg::ridge_solve(2.0 * Matrix::Identity(10, 10), b) - 0.5 * b)
            .cwiseAbs()
            .maxCoeff() < 1e-12);
  const Matrix g = test_util::random_spd(rng, 10);
  const Matrix x = linalg::ridge_solve(g, b);
  CHECK((g * x - b).norm() <= 1e-8 * std::max(1.0, b.norm()));
}

TEST_CASE("ridge_solve: indefinite input rejected") {
  Matrix g = Matrix::Identity(3, 3);
  g(2, 2) = -1.0;
  CHECK_THROWS(linalg::ridge_solve(g, Matrix::Identity(3, 3)));
}
