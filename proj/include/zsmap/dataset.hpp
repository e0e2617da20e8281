#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "zsmap/matrix.hpp"

namespace zsmap {

/// Bundled seen/unseen features, labels and semantic representations.
/// Features are stored d x n (columns are instances), labels n x C one-hot,
/// semantics a x C (columns are categories).
struct ZslDataset {
  Matrix seen_features;    // d x n_s
  Matrix seen_labels;      // n_s x C_s, one-hot rows
  Matrix seen_semantics;   // a x C_s
  Matrix unseen_features;  // d x n_t
  Matrix unseen_semantics; // a x C_t
  std::optional<Matrix> unseen_labels;  // n_t x C_t, for evaluation only
  std::vector<std::string> seen_categories;
  std::vector<std::string> unseen_categories;

  Eigen::Index feature_dim() const { return seen_features.rows(); }
  Eigen::Index semantic_dim() const { return seen_semantics.rows(); }
  Eigen::Index num_seen() const { return seen_semantics.cols(); }
  Eigen::Index num_unseen() const { return unseen_semantics.cols(); }

  /// Checks all type invariants (dimension consistency, one-hot labels,
  /// finite values, disjoint category id sets). Throws std::invalid_argument.
  void validate() const;
};

/// Parameters of the synthetic projection-domain-shift generator.
struct SyntheticSpec {
  int feature_dim = 30;        // d
  int semantic_dim = 15;       // a
  int num_seen = 20;           // C_s
  int num_unseen = 5;          // C_t
  int instances_per_category = 25;
  double mapping_drift = 0.0;  // per-category mapping perturbation magnitude
  double noise_sigma = 0.0;
  uint64_t seed = 0;

  void validate() const;
};

/// Deterministic synthetic dataset. Category c's instances are
/// (W* + drift * Delta_c) a_c + sigma * noise, with W* a shared ground-truth
/// mapping and Delta_c a random perturbation that varies smoothly with the
/// category's semantic vector, so categories with similar semantics have
/// similar mappings. Semantic prototypes are nonnegative, unit L2-normalized.
ZslDataset generate_synthetic(const SyntheticSpec& spec);

/// Manifest + CSV persistence. The manifest is JSON with fields
/// name, d, a, matrix file paths (relative to the manifest) and the
/// category id lists; see README for the byte-exact layout.
ZslDataset load_dataset(const std::filesystem::path& manifest_path);
void save_dataset(const std::filesystem::path& manifest_path,
                  const ZslDataset& dataset,
                  const std::string& name = "dataset");

/// Inner train/validation split: the first C_v seen categories (stored
/// order) become pseudo-unseen validation categories with
/// C_v = round(C_s * C_t / (C_s + C_t)), at least 1. The returned dataset
/// has the remaining categories as its seen part and the validation
/// categories as its (labeled) unseen part.
struct ValidationSplit {
  ZslDataset inner;
  std::vector<int> validation_category_indices;  // into the original seen set
};
ValidationSplit validation_split(const ZslDataset& dataset);

}  // namespace zsmap
