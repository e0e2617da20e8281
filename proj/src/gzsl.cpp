#include "zsmap/gzsl.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace zsmap::gzsl {

Matrix joint_semantics(const ZslDataset& dataset) {
  Matrix joint(dataset.semantic_dim(),
               dataset.num_seen() + dataset.num_unseen());
  joint << dataset.seen_semantics, dataset.unseen_semantics;
  return joint;
}

aezsl::AezslModel fit_aezsl_gzsl(const ZslDataset& dataset,
                                 const aezsl::AezslOptions& opts) {
  const Matrix joint = joint_semantics(dataset);
  const aezsl::SimilarityWeights weights =
      aezsl::build_similarity(dataset.seen_semantics, joint);
  return aezsl::fit_aezsl_core(dataset.seen_features, dataset.seen_labels,
                               dataset.seen_semantics, joint, weights, opts);
}

std::vector<int> calibrated_stack(const Matrix& scores,
                                  const std::vector<bool>& seen_mask,
                                  double gamma_cal) {
  if (static_cast<Eigen::Index>(seen_mask.size()) != scores.cols()) {
    throw std::invalid_argument("calibrated_stack: mask length mismatch");
  }
  std::vector<int> out(static_cast<size_t>(scores.rows()));
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    int best = -1;
    double best_score = -std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < scores.cols(); ++c) {
      const double s =
          scores(r, c) - (seen_mask[static_cast<size_t>(c)] ? gamma_cal : 0.0);
      if (s > best_score) {
        best_score = s;
        best = static_cast<int>(c);
      }
    }
    out[static_cast<size_t>(r)] = best;
  }
  return out;
}

CalibrationResult select_gamma_ausuc(const Matrix& val_scores,
                                     const std::vector<int>& val_labels,
                                     const std::vector<bool>& seen_mask,
                                     std::vector<double> grid) {
  if (static_cast<Eigen::Index>(val_labels.size()) != val_scores.rows()) {
    throw std::invalid_argument("select_gamma_ausuc: label count mismatch");
  }
  int n_seen = 0, n_unseen = 0;
  for (int lbl : val_labels) {
    (seen_mask[static_cast<size_t>(lbl)] ? n_seen : n_unseen) += 1;
  }
  if (n_seen == 0 || n_unseen == 0) {
    throw std::invalid_argument(
        "select_gamma_ausuc: validation set must contain both seen- and "
        "unseen-category instances");
  }

  if (grid.empty()) {
    // Per-row gap between the best seen score and the best unseen score;
    // sweeping gamma across the gap range covers every decision flip.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (Eigen::Index r = 0; r < val_scores.rows(); ++r) {
      double best_seen = -std::numeric_limits<double>::infinity();
      double best_unseen = -std::numeric_limits<double>::infinity();
      for (Eigen::Index c = 0; c < val_scores.cols(); ++c) {
        double& slot = seen_mask[static_cast<size_t>(c)] ? best_seen : best_unseen;
        slot = std::max(slot, val_scores(r, c));
      }
      const double gap = best_seen - best_unseen;
      lo = std::min(lo, gap);
      hi = std::max(hi, gap);
    }
    for (int i = 0; i <= 100; ++i) {
      grid.push_back(lo + (hi - lo) * static_cast<double>(i) / 100.0);
    }
  }

  CalibrationResult result;
  double best_product = -1.0;
  for (double gamma : grid) {
    const std::vector<int> pred = calibrated_stack(val_scores, seen_mask, gamma);
    int hit_seen = 0, hit_unseen = 0;
    for (size_t i = 0; i < pred.size(); ++i) {
      if (pred[i] != val_labels[i]) continue;
      (seen_mask[static_cast<size_t>(val_labels[i])] ? hit_seen : hit_unseen) += 1;
    }
    const double acc_seen = static_cast<double>(hit_seen) / n_seen;
    const double acc_unseen = static_cast<double>(hit_unseen) / n_unseen;
    result.curve.emplace_back(acc_seen, acc_unseen);
    const double product = acc_seen * acc_unseen;
    if (product > best_product) {
      best_product = product;
      result.gamma_cal = gamma;
    }
  }

  // Append the axis endpoints so the trapezoid is well defined even for a
  // single grid point, then integrate over seen accuracy.
  double max_seen = 0.0, max_unseen = 0.0;
  for (const auto& [s, u] : result.curve) {
    max_seen = std::max(max_seen, s);
    max_unseen = std::max(max_unseen, u);
  }
  std::vector<std::pair<double, double>> pts = result.curve;
  pts.emplace_back(0.0, max_unseen);
  pts.emplace_back(max_seen, 0.0);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first < b.first : a.second > b.second;
  });
  double area = 0.0;
  for (size_t i = 1; i < pts.size(); ++i) {
    area += 0.5 * (pts[i].first - pts[i - 1].first) *
            (pts[i].second + pts[i - 1].second);
  }
  result.ausuc = area;
  return result;
}

}  // namespace zsmap::gzsl
