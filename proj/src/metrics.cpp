#include "zsmap/metrics.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zsmap::metrics {

double multiclass_accuracy(const std::vector<int>& predicted,
                           const std::vector<int>& truth) {
  if (predicted.size() != truth.size()) {
    throw std::invalid_argument("multiclass_accuracy: length mismatch");
  }
  if (predicted.empty()) {
    throw std::invalid_argument("multiclass_accuracy: empty input");
  }
  size_t hits = 0;
  for (size_t i = 0; i < predicted.size(); ++i) {
    if (predicted[i] == truth[i]) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(predicted.size());
}

std::vector<int> top_k_indices(const Vector& scores, int k) {
  std::vector<int> order(static_cast<size_t>(scores.size()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return scores(a) != scores(b) ? scores(a) > scores(b) : a < b;
  });
  order.resize(static_cast<size_t>(k));
  return order;
}

double flat_hit_at_k(const Matrix& score_rows, const std::vector<int>& truth,
                     int k) {
  if (k < 1 || k > score_rows.cols()) {
    throw std::invalid_argument("flat_hit_at_k: K out of range");
  }
  if (static_cast<Eigen::Index>(truth.size()) != score_rows.rows()) {
    throw std::invalid_argument("flat_hit_at_k: length mismatch");
  }
  size_t hits = 0;
  for (Eigen::Index r = 0; r < score_rows.rows(); ++r) {
    const auto top = top_k_indices(score_rows.row(r).transpose(), k);
    if (std::find(top.begin(), top.end(), truth[static_cast<size_t>(r)]) !=
        top.end()) {
      ++hits;
    }
  }
  return static_cast<double>(hits) / static_cast<double>(score_rows.rows());
}

void LabelHierarchy::add_edge(const std::string& parent,
                              const std::string& child) {
  neighbors_[parent].push_back(child);
  neighbors_[child].push_back(parent);
  directed_[parent].push_back(child);
}

void LabelHierarchy::mark_test_category(const std::string& node,
                                        int category_index) {
  neighbors_[node];  // ensure the node exists even if isolated
  test_categories_[node] = category_index;
}

bool LabelHierarchy::has_node(const std::string& node) const {
  return neighbors_.count(node) > 0;
}

void LabelHierarchy::validate() const {
  // Kahn's algorithm over the directed edges.
  std::map<std::string, int> indegree;
  for (const auto& [node, children] : directed_) {
    indegree[node];
    for (const auto& c : children) ++indegree[c];
  }
  std::deque<std::string> ready;
  for (const auto& [node, deg] : indegree) {
    if (deg == 0) ready.push_back(node);
  }
  size_t visited = 0;
  while (!ready.empty()) {
    const std::string node = ready.front();
    ready.pop_front();
    ++visited;
    auto it = directed_.find(node);
    if (it == directed_.end()) continue;
    for (const auto& c : it->second) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  if (visited != indegree.size()) {
    throw std::invalid_argument("label hierarchy contains a cycle");
  }
}

std::vector<int> LabelHierarchy::feasible_set(const std::string& truth_node,
                                              int k) const {
  if (!has_node(truth_node)) {
    throw std::invalid_argument("feasible_set: unknown node " + truth_node);
  }
  std::set<std::string> frontier{truth_node};
  std::set<std::string> seen{truth_node};
  std::set<int> feasible;
  if (auto it = test_categories_.find(truth_node);
      it != test_categories_.end()) {
    feasible.insert(it->second);
  }
  while (static_cast<int>(feasible.size()) < k && !frontier.empty()) {
    std::set<std::string> next;
    for (const auto& node : frontier) {
      auto it = neighbors_.find(node);
      if (it == neighbors_.end()) continue;
      for (const auto& nb : it->second) {
        if (seen.insert(nb).second) next.insert(nb);
      }
    }
    for (const auto& node : next) {
      if (auto it = test_categories_.find(node);
          it != test_categories_.end()) {
        feasible.insert(it->second);
      }
    }
    frontier = std::move(next);
  }
  return {feasible.begin(), feasible.end()};
}

LabelHierarchy LabelHierarchy::load(
    const std::filesystem::path& edges_path,
    const std::filesystem::path& test_list_path) {
  std::ifstream edges(edges_path);
  if (!edges) {
    throw std::invalid_argument("cannot open hierarchy edges: " +
                                edges_path.string());
  }
  LabelHierarchy h;
  std::string line;
  while (std::getline(edges, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string parent, child;
    if (!(ss >> parent >> child)) {
      throw std::invalid_argument("bad hierarchy edge line: " + line);
    }
    h.add_edge(parent, child);
  }
  std::ifstream tests(test_list_path);
  if (!tests) {
    throw std::invalid_argument("cannot open test category list: " +
                                test_list_path.string());
  }
  int index = 0;
  while (std::getline(tests, line)) {
    if (line.empty()) continue;
    h.mark_test_category(line, index++);
  }
  h.validate();
  return h;
}

double hierarchical_precision_at_k(const Matrix& score_rows,
                                   const std::vector<std::string>& truth_nodes,
                                   int k, const LabelHierarchy& hierarchy) {
  if (k < 1) {
    throw std::invalid_argument("hierarchical_precision_at_k: K must be >= 1");
  }
  if (static_cast<Eigen::Index>(truth_nodes.size()) != score_rows.rows()) {
    throw std::invalid_argument("hierarchical_precision_at_k: length mismatch");
  }
  double total = 0.0;
  for (Eigen::Index r = 0; r < score_rows.rows(); ++r) {
    const auto feasible =
        hierarchy.feasible_set(truth_nodes[static_cast<size_t>(r)], k);
    const auto top = top_k_indices(score_rows.row(r).transpose(),
                                   std::min<int>(k, static_cast<int>(score_rows.cols())));
    int overlap = 0;
    for (int c : top) {
      if (std::find(feasible.begin(), feasible.end(), c) != feasible.end()) {
        ++overlap;
      }
    }
    total += static_cast<double>(overlap) / static_cast<double>(k);
  }
  return total / static_cast<double>(score_rows.rows());
}

}  // namespace zsmap::metrics
