#pragma once

#include <vector>

#include "zsmap/dataset.hpp"
#include "zsmap/matrix.hpp"

namespace zsmap::eszsl {

struct EszslModel {
  Matrix mapping;  // W, d x a
  double gamma = 1.0;
  double lambda = 1.0;  // beta = gamma * lambda is implied by the closed form
};

/// Closed-form fit: W = (X X' + gamma I)^{-1} X Y A' (A A' + lambda I)^{-1}.
EszslModel fit_eszsl(const ZslDataset& dataset, double gamma, double lambda);

/// n x C compatibility scores X' W A.
Matrix predict_compatibility(const Matrix& w, const Matrix& features,
                             const Matrix& semantics);

/// Row argmax with ties broken by lowest category index.
std::vector<int> argmax_rows(const Matrix& scores);

}  // namespace zsmap::eszsl
