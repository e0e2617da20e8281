#include "zsmap/aezsl.hpp"

#include <cmath>
#include <stdexcept>

#include "zsmap/linalg.hpp"

namespace zsmap::aezsl {

double cosine_similarity(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("cosine_similarity: size mismatch");
  }
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) {
    throw std::invalid_argument("cosine_similarity: zero-norm vector");
  }
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

SimilarityWeights build_similarity(const Matrix& seen_semantics,
                                   const Matrix& target_semantics) {
  if (seen_semantics.rows() != target_semantics.rows()) {
    throw std::invalid_argument("build_similarity: semantic dim mismatch");
  }
  SimilarityWeights w;
  w.weights.resize(target_semantics.cols(), seen_semantics.cols());
  for (Eigen::Index c = 0; c < target_semantics.cols(); ++c) {
    for (Eigen::Index s = 0; s < seen_semantics.cols(); ++s) {
      w.weights(c, s) =
          cosine_similarity(target_semantics.col(c), seen_semantics.col(s));
    }
  }
  return w;
}

double aezsl_objective(const Matrix& x, const Matrix& y, const Matrix& a,
                       const SimilarityWeights& weights,
                       const std::vector<Matrix>& mappings,
                       const AezslOptions& opts) {
  const auto ct = static_cast<Eigen::Index>(mappings.size());
  double obj = 0.0;
  for (Eigen::Index c = 0; c < ct; ++c) {
    const Matrix& w = mappings[static_cast<size_t>(c)];
    Matrix resid = x.transpose() * w * a - y;
    resid *= weights.weights.row(c).asDiagonal();
    obj += 0.5 * resid.squaredNorm();
    obj += 0.5 * opts.lambda1 * (x.transpose() * w).squaredNorm();
    obj += 0.5 * opts.lambda2 * w.squaredNorm();
  }
  for (Eigen::Index c = 0; c < ct; ++c) {
    for (Eigen::Index cc = c + 1; cc < ct; ++cc) {
      obj += 0.5 * opts.lambda3 *
             (mappings[static_cast<size_t>(c)] -
              mappings[static_cast<size_t>(cc)])
                 .squaredNorm();
    }
  }
  return obj;
}

AezslModel fit_aezsl_core(const Matrix& x, const Matrix& y, const Matrix& a,
                          const Matrix& target_semantics,
                          const SimilarityWeights& weights,
                          const AezslOptions& opts) {
  if (opts.lambda1 <= 0.0) {
    throw std::invalid_argument("fit_aezsl: lambda1 must be > 0");
  }
  if (opts.lambda2 < 0.0 || opts.lambda3 < 0.0) {
    throw std::invalid_argument("fit_aezsl: lambdas must be >= 0");
  }
  const auto ct = weights.num_targets();
  if (ct != target_semantics.cols()) {
    throw std::invalid_argument("fit_aezsl: weight rows vs target categories");
  }
  if (weights.weights.cols() != a.cols() || x.cols() != y.rows() ||
      a.cols() != y.cols() || a.rows() != target_semantics.rows()) {
    throw std::invalid_argument("fit_aezsl: dimension mismatch");
  }
  const double mu = static_cast<double>(ct - 1) * opts.lambda3 + opts.lambda2;
  if (mu <= 0.0) {
    throw std::invalid_argument("fit_aezsl: need lambda2 > 0 or lambda3 > 0");
  }

  // Initialization: all W^c start at the consensus solution of the
  // mean-weighted problem (diagonal weights averaged over target
  // categories). This is the exact lambda3 -> infinity limit, so heavily
  // coupled problems start at their fixed point instead of crawling
  // toward it one O(1/lambda3) step per sweep.
  const Eigen::Index sa0 = a.rows();
  Vector s2_mean = Vector::Zero(weights.weights.cols());
  for (Eigen::Index c = 0; c < ct; ++c) {
    s2_mean += weights.weights.row(c).array().square().matrix().transpose();
  }
  s2_mean /= static_cast<double>(ct);
  const Matrix t_mean = a * s2_mean.asDiagonal() * a.transpose() +
                        opts.lambda1 * Matrix::Identity(sa0, sa0);
  const Matrix n_mean = x * y * s2_mean.asDiagonal() * a.transpose();
  const double init_mu = opts.lambda2 > 0.0 ? opts.lambda2 : 1.0;
  Matrix w0 = linalg::solve_special_sylvester(x * x.transpose(), t_mean,
                                              n_mean, init_mu);

  AezslModel model;
  model.options = opts;
  model.mappings.assign(static_cast<size_t>(ct), w0);

  const Eigen::Index d = x.rows();
  Matrix l = x * x.transpose();
  linalg::SymmetricEigen l_eig = linalg::sym_eigen(l);
  for (Eigen::Index i = 0; i < l_eig.eigenvalues.size(); ++i) {
    l_eig.eigenvalues(i) = std::max(l_eig.eigenvalues(i), 0.0);
  }

  // T_c and the fixed part of N_c are constant across sweeps; the
  // eigendecomposition of each T_c is cached up front.
  std::vector<linalg::SymmetricEigen> t_eigs;
  std::vector<Matrix> n_fixed;
  const Eigen::Index sa = a.rows();
  for (Eigen::Index c = 0; c < ct; ++c) {
    Vector s2 = weights.weights.row(c).array().square().matrix().transpose();
    Matrix t = a * s2.asDiagonal() * a.transpose() +
               opts.lambda1 * Matrix::Identity(sa, sa);
    t_eigs.push_back(linalg::sym_eigen(t));
    for (Eigen::Index i = 0; i < t_eigs.back().eigenvalues.size(); ++i) {
      if (t_eigs.back().eigenvalues(i) <= 1e-12) {
        throw std::invalid_argument("fit_aezsl: T not positive definite");
      }
    }
    n_fixed.push_back(x * y * s2.asDiagonal() * a.transpose());
  }

  auto sylvester_solve = [&](const linalg::SymmetricEigen& t_eig,
                             const Matrix& n) {
    Matrix n_hat = l_eig.basis.transpose() * n * t_eig.basis;
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < n_hat.cols(); ++j) {
        n_hat(i, j) /= l_eig.eigenvalues(i) * t_eig.eigenvalues(j) + mu;
      }
    }
    return Matrix(l_eig.basis * n_hat * t_eig.basis.transpose());
  };

  double obj = aezsl_objective(x, y, a, weights, model.mappings, opts);
  model.objective_per_update.push_back(obj);
  model.objective_per_sweep.push_back(obj);

  Matrix sum_w = Matrix::Zero(d, sa);
  for (const Matrix& w : model.mappings) sum_w += w;

  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double prev = model.objective_per_sweep.back();
    for (Eigen::Index c = 0; c < ct; ++c) {
      Matrix& wc = model.mappings[static_cast<size_t>(c)];
      Matrix n = n_fixed[static_cast<size_t>(c)];
      if (opts.lambda3 > 0.0) {
        n += opts.lambda3 * (sum_w - wc);
      }
      sum_w -= wc;
      wc = sylvester_solve(t_eigs[static_cast<size_t>(c)], n);
      sum_w += wc;
      model.objective_per_update.push_back(
          aezsl_objective(x, y, a, weights, model.mappings, opts));
    }
    const double cur = model.objective_per_update.back();
    model.objective_per_sweep.push_back(cur);
    if (prev - cur < opts.tol * std::max(1.0, std::abs(prev))) break;
    if (opts.lambda3 == 0.0) break;  // decoupled blocks converge in one sweep
  }

  model.classifiers = extract_classifiers(model.mappings, target_semantics);
  return model;
}

AezslModel fit_aezsl(const ZslDataset& dataset,
                     const SimilarityWeights& weights,
                     const AezslOptions& opts) {
  return fit_aezsl_core(dataset.seen_features, dataset.seen_labels,
                        dataset.seen_semantics, dataset.unseen_semantics,
                        weights, opts);
}

Matrix extract_classifiers(const std::vector<Matrix>& mappings,
                           const Matrix& target_semantics) {
  const auto ct = static_cast<Eigen::Index>(mappings.size());
  if (ct != target_semantics.cols()) {
    throw std::invalid_argument("extract_classifiers: category count mismatch");
  }
  if (ct == 0) return Matrix(0, 0);
  Matrix p(mappings.front().rows(), ct);
  for (Eigen::Index c = 0; c < ct; ++c) {
    const Matrix& w = mappings[static_cast<size_t>(c)];
    if (w.cols() != target_semantics.rows()) {
      throw std::invalid_argument("extract_classifiers: dimension mismatch");
    }
    p.col(c) = w * target_semantics.col(c);
  }
  return p;
}

}  // namespace zsmap::aezsl
