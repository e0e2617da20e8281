#include "zsmap/eszsl.hpp"

#include <stdexcept>

#include "zsmap/linalg.hpp"

namespace zsmap::eszsl {

EszslModel fit_eszsl(const ZslDataset& dataset, double gamma, double lambda) {
  if (gamma <= 0.0 || lambda <= 0.0) {
    throw std::invalid_argument("fit_eszsl: gamma and lambda must be > 0");
  }
  const Matrix& x = dataset.seen_features;
  const Matrix& y = dataset.seen_labels;
  const Matrix& a = dataset.seen_semantics;
  if (x.cols() != y.rows() || a.cols() != y.cols()) {
    throw std::invalid_argument("fit_eszsl: dimension mismatch");
  }
  const Eigen::Index d = x.rows();
  const Eigen::Index sa = a.rows();

  Matrix left = x * x.transpose() + gamma * Matrix::Identity(d, d);
  Matrix right = a * a.transpose() + lambda * Matrix::Identity(sa, sa);
  Matrix mid = x * y * a.transpose();
  Matrix w = linalg::ridge_solve(left, mid);
  w = linalg::ridge_solve(right, w.transpose()).transpose();
  return {w, gamma, lambda};
}

Matrix predict_compatibility(const Matrix& w, const Matrix& features,
                             const Matrix& semantics) {
  if (features.rows() != w.rows() || semantics.rows() != w.cols()) {
    throw std::invalid_argument("predict_compatibility: dimension mismatch");
  }
  return features.transpose() * w * semantics;
}

std::vector<int> argmax_rows(const Matrix& scores) {
  std::vector<int> out(static_cast<size_t>(scores.rows()));
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    int best = 0;
    for (Eigen::Index c = 1; c < scores.cols(); ++c) {
      if (scores(r, c) > scores(r, best)) best = static_cast<int>(c);
    }
    out[static_cast<size_t>(r)] = best;
  }
  return out;
}

}  // namespace zsmap::eszsl
