#pragma once

#include "zsmap/matrix.hpp"

namespace zsmap::linalg {

/// Orthonormal eigenbasis and real eigenvalues of a symmetric matrix.
struct SymmetricEigen {
  Matrix basis;        // orthonormal columns
  Vector eigenvalues;  // ascending
};

/// Symmetric eigendecomposition. Input must be square and symmetric within
/// 1e-10 relative; the result reconstructs the input within 1e-8 relative
/// Frobenius error.
SymmetricEigen sym_eigen(const Matrix& m);

/// Precomputed factorization for repeated solves of L*W*T + mu*W = N with
/// L PSD symmetric and T PD symmetric. Eigenvalues of L in (-1e-10, 0) are
/// clamped to 0; T eigenvalues must exceed 1e-12.
class SylvesterFactorization {
 public:
  SylvesterFactorization(const Matrix& l, const Matrix& t);

  /// Entrywise solve in the eigenbases: What_ij = Nhat_ij / (sL_i*sT_j + mu).
  Matrix solve(const Matrix& n, double mu) const;

  const Vector& l_eigenvalues() const { return l_eig_.eigenvalues; }
  const Vector& t_eigenvalues() const { return t_eig_.eigenvalues; }

 private:
  SymmetricEigen l_eig_;
  SymmetricEigen t_eig_;
};

/// One-shot solve of L*W*T + mu*W = N.
Matrix solve_special_sylvester(const Matrix& l, const Matrix& t,
                               const Matrix& n, double mu);

/// X = G^{-1} B for symmetric positive definite G via LDLT.
Matrix ridge_solve(const Matrix& g, const Matrix& b);

}  // namespace zsmap::linalg
