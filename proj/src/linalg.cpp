#include "zsmap/linalg.hpp"

#include <stdexcept>
#include <string>

namespace zsmap::linalg {

SymmetricEigen sym_eigen(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("sym_eigen: matrix must be square");
  }
  const double scale = std::max(1.0, m.norm());
  if ((m - m.transpose()).norm() > 1e-10 * scale) {
    throw std::invalid_argument("sym_eigen: matrix not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("sym_eigen: decomposition failed");
  }
  return {solver.eigenvectors(), solver.eigenvalues()};
}

SylvesterFactorization::SylvesterFactorization(const Matrix& l,
                                               const Matrix& t)
    : l_eig_(sym_eigen(l)), t_eig_(sym_eigen(t)) {
  for (Eigen::Index i = 0; i < l_eig_.eigenvalues.size(); ++i) {
    double& ev = l_eig_.eigenvalues(i);
    if (ev < 0.0) {
      if (ev > -1e-10) {
        ev = 0.0;  // PSD slack for L = X X'
      } else {
        throw std::invalid_argument(
            "solve_special_sylvester: L has negative eigenvalue " +
            std::to_string(ev));
      }
    }
  }
  for (Eigen::Index i = 0; i < t_eig_.eigenvalues.size(); ++i) {
    if (t_eig_.eigenvalues(i) <= 1e-12) {
      throw std::invalid_argument(
          "solve_special_sylvester: T not positive definite");
    }
  }
}

Matrix SylvesterFactorization::solve(const Matrix& n, double mu) const {
  if (mu <= 0.0) {
    throw std::invalid_argument("solve_special_sylvester: mu must be > 0");
  }
  if (n.rows() != l_eig_.basis.rows() || n.cols() != t_eig_.basis.rows()) {
    throw std::invalid_argument("solve_special_sylvester: N dimension mismatch");
  }
  Matrix n_hat = l_eig_.basis.transpose() * n * t_eig_.basis;
  for (Eigen::Index i = 0; i < n_hat.rows(); ++i) {
    for (Eigen::Index j = 0; j < n_hat.cols(); ++j) {
      n_hat(i, j) /= l_eig_.eigenvalues(i) * t_eig_.eigenvalues(j) + mu;
    }
  }
  return l_eig_.basis * n_hat * t_eig_.basis.transpose();
}

Matrix solve_special_sylvester(const Matrix& l, const Matrix& t,
                               const Matrix& n, double mu) {
  return SylvesterFactorization(l, t).solve(n, mu);
}

Matrix ridge_solve(const Matrix& g, const Matrix& b) {
  if (g.rows() != g.cols() || g.rows() != b.rows()) {
    throw std::invalid_argument("ridge_solve: dimension mismatch");
  }
  Eigen::LDLT<Matrix> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw std::invalid_argument("ridge_solve: G not positive definite");
  }
  Matrix x = ldlt.solve(b);
  const double resid = (g * x - b).norm();
  if (resid > 1e-8 * std::max(1.0, b.norm())) {
    throw std::runtime_error("ridge_solve: ill-conditioned system, residual " +
                             std::to_string(resid));
  }
  return x;
}

}  // namespace zsmap::linalg
