#pragma once

#include <vector>

#include "zsmap/dataset.hpp"
#include "zsmap/matrix.hpp"

namespace zsmap::aezsl {

/// Cosine similarity of two nonzero vectors, in [-1, 1].
double cosine_similarity(const Vector& u, const Vector& v);

/// Per-target-category cosine weights against all seen categories.
/// Row c holds s^c in [-1,1]^{C_s}. Negative cosines are kept as-is; they
/// are squared inside the weighted normal equations anyway.
struct SimilarityWeights {
  Matrix weights;  // C_target x C_s

  Eigen::Index num_targets() const { return weights.rows(); }
};

SimilarityWeights build_similarity(const Matrix& seen_semantics,
                                   const Matrix& target_semantics);

struct AezslOptions {
  double lambda1 = 1.0;   // ||X'W^c||_F^2 weight, must be > 0
  double lambda2 = 1.0;   // ||W^c||_F^2 weight
  double lambda3 = 0.0;   // co-regularizer weight
  int max_sweeps = 100;
  double tol = 1e-6;      // relative objective decrease between sweeps
};

struct AezslModel {
  std::vector<Matrix> mappings;  // one d x a matrix per target category
  Matrix classifiers;            // d x C_target, column c = W^c * a_c
  AezslOptions options;
  std::vector<double> objective_per_update;  // initial value + one per W^c update
  std::vector<double> objective_per_sweep;
};

/// Weighted multi-task objective: the similarity-weighted square losses plus
/// the lambda1/lambda2 regularizers and the pairwise co-regularizer.
double aezsl_objective(const Matrix& x, const Matrix& y, const Matrix& a,
                       const SimilarityWeights& weights,
                       const std::vector<Matrix>& mappings,
                       const AezslOptions& opts);

/// Alternating per-category Sylvester solves; sweep order is ascending
/// category index. Initialization: one shared mapping solving the
/// mean-weighted (consensus) problem.
AezslModel fit_aezsl_core(const Matrix& x, const Matrix& y, const Matrix& a,
                          const Matrix& target_semantics,
                          const SimilarityWeights& weights,
                          const AezslOptions& opts);

/// Standard ZSL: targets are the dataset's unseen categories.
AezslModel fit_aezsl(const ZslDataset& dataset,
                     const SimilarityWeights& weights,
                     const AezslOptions& opts);

/// Stacks p^c = W^c a_c as columns of a d x C matrix.
Matrix extract_classifiers(const std::vector<Matrix>& mappings,
                           const Matrix& target_semantics);

}  // namespace zsmap::aezsl
