#pragma once

#include <utility>
#include <vector>

#include "zsmap/matrix.hpp"

namespace zsmap::refine {

/// Softmax confidence of the argmax decision value under classifiers P.
/// Returns (score in (0,1], label index); ties go to the lowest index.
std::pair<double, int> confidence(const Matrix& p, const Vector& x);

/// Zero-diagonal symmetric cosine-similarity matrix over target categories.
Matrix build_transition(const Matrix& unseen_semantics);

/// Graph Laplacian H = Dg - S_aff over instance columns of `features`:
/// symmetrized k-nearest-neighbor affinity with heat-kernel weights
/// exp(-dist^2 / (2 sigma^2)). sigma <= 0 selects the median distance
/// among neighbor pairs.
Matrix build_laplacian(const Matrix& features, int k_nn, double sigma);

struct RefineOptions {
  double gamma1 = 1.0;  // group-lasso weight
  double gamma2 = 0.1;  // transition coherence weight
  double gamma3 = 0.1;  // Laplacian smoothness weight
  double nu = 1e-8;     // ridge added to keep the system invertible
  int max_inner = 50;
  double tol = 1e-8;    // relative objective decrease
  int k_nn = 7;
  double sigma = 0.0;   // <= 0: median heuristic
};

/// Objective of the refinement problem: square loss on the confident set,
/// L2,1 group-lasso on the unconfident residual, minus the transition
/// coherence trace, plus the Laplacian smoothness trace.
double refine_objective(const Matrix& xl, const Matrix& yl, const Matrix& xu,
                        const Matrix& yu, const Matrix& transition,
                        const Matrix& laplacian, const Matrix& p,
                        const RefineOptions& opts);

struct UpdateResult {
  Matrix p;
  std::vector<double> objective_trace;  // one entry per inner D/P alternation
};

/// Iteratively reweighted closed-form update of P. Alternates the diagonal
/// reweighting D_ii = 1 / (2 max(||q_i||, 1e-10)) with the ridge solve
/// until the objective change drops below tol or max_inner is reached.
UpdateResult update_p(const Matrix& xl, const Matrix& yl, const Matrix& xu,
                      const Matrix& yu, const Matrix& transition,
                      const Matrix& laplacian, const RefineOptions& opts);

struct RefineResult {
  Matrix labels;       // n_t x C_t one-hot, final predicted labels
  Matrix classifiers;  // final P
  std::vector<std::vector<int>> moved_per_iteration;  // instance indices
  std::vector<Matrix> p_per_iteration;
  std::vector<Matrix> labels_per_iteration;  // label-state snapshots
};

/// Progressive refinement: grows the confident set by the k most confident
/// unconfident instances per outer iteration (labels frozen at their current
/// argmax), re-solving P each time, until no unconfident instances remain.
/// With one_step set, all instances are treated as unconfident and P is
/// updated once without the confident-set square loss.
RefineResult refine_labels(const Matrix& test_features,
                           const Matrix& initial_p,
                           const Matrix& unseen_semantics, int k,
                           const RefineOptions& opts, bool one_step = false);

}  // namespace zsmap::refine
