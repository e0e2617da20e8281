#pragma once

#include <vector>

#include "zsmap/aezsl.hpp"
#include "zsmap/dataset.hpp"

namespace zsmap::gzsl {

/// Generalized ZSL fit: one category-specific mapping per target category
/// over the joint seen+unseen label space. Similarity weights are cosines
/// between every target category (seen categories included) and all seen
/// categories. Returns a model whose classifiers stack the seen columns
/// first, then the unseen columns.
aezsl::AezslModel fit_aezsl_gzsl(const ZslDataset& dataset,
                                 const aezsl::AezslOptions& opts);

/// Joint semantics [A_s | A_t], the column layout used by fit_aezsl_gzsl.
Matrix joint_semantics(const ZslDataset& dataset);

/// Calibrated stacking: subtract gamma_cal from the scores of seen-category
/// columns, then row argmax with ties to the lowest index.
std::vector<int> calibrated_stack(const Matrix& scores,
                                  const std::vector<bool>& seen_mask,
                                  double gamma_cal);

struct CalibrationResult {
  double gamma_cal = 0.0;
  double ausuc = 0.0;
  std::vector<std::pair<double, double>> curve;  // (seen acc, unseen acc)
};

/// Sweeps the calibration threshold over `grid` (empty: 101 values spanning
/// the observed per-row score gaps), computes the seen/unseen accuracy
/// trade-off curve, AUSUC by trapezoid after appending the axis endpoints,
/// and returns the gamma maximizing seen_acc * unseen_acc.
CalibrationResult select_gamma_ausuc(const Matrix& val_scores,
                                     const std::vector<int>& val_labels,
                                     const std::vector<bool>& seen_mask,
                                     std::vector<double> grid = {});

}  // namespace zsmap::gzsl
