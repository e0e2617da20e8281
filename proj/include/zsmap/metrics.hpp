#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "zsmap/matrix.hpp"

namespace zsmap::metrics {

double multiclass_accuracy(const std::vector<int>& predicted,
                           const std::vector<int>& truth);

/// Fraction of rows whose true label is among the K highest scores.
/// Ties at the top-K boundary go to the lowest category index.
double flat_hit_at_k(const Matrix& score_rows, const std::vector<int>& truth,
                     int k);

/// Directed acyclic category hierarchy with test-category flags, used for
/// the feasible-set expansion of hierarchical precision.
class LabelHierarchy {
 public:
  void add_edge(const std::string& parent, const std::string& child);
  void mark_test_category(const std::string& node, int category_index);

  bool has_node(const std::string& node) const;

  /// Test-category indices gathered by undirected breadth-first expansion
  /// from `truth_node`, growing the radius until the set size reaches k.
  /// All categories at the final radius are kept even when that overshoots.
  std::vector<int> feasible_set(const std::string& truth_node, int k) const;

  /// Throws if a cycle exists in the directed edges.
  void validate() const;

  /// Edge-list file: one "parent child" pair per line. The test list file
  /// holds one node name per line; line order defines category indices.
  static LabelHierarchy load(const std::filesystem::path& edges_path,
                             const std::filesystem::path& test_list_path);

  const std::map<std::string, int>& test_categories() const {
    return test_categories_;
  }

 private:
  std::map<std::string, std::vector<std::string>> neighbors_;
  std::map<std::string, std::vector<std::string>> directed_;
  std::map<std::string, int> test_categories_;
};

/// Mean over instances of |top-K predictions ∩ feasible set| / K.
/// `truth_nodes` maps each row to its ground-truth node name.
double hierarchical_precision_at_k(const Matrix& score_rows,
                                   const std::vector<std::string>& truth_nodes,
                                   int k, const LabelHierarchy& hierarchy);

/// Top-K category indices of one score row, ties to the lowest index.
std::vector<int> top_k_indices(const Vector& scores, int k);

}  // namespace zsmap::metrics
